#include <doctest.h>

#include <random>

#include "bpslab/analytics.hpp"
#include "bpslab/errors.hpp"
#include "bpslab/spec_io.hpp"
#include "oracles.hpp"

using namespace bpslab;

namespace {

// D(k) for k <= limit by brute-force divisor counting.
struct BruteD {
  std::vector<double> d;
  explicit BruteD(std::uint64_t limit) : d(limit + 1, 0.0) {
    for (std::uint64_t k = 1; k <= limit; ++k) d[k] = d[k - 1] + static_cast<double>(oracle::tau_brute(k));
  }
  double delta(double y) const {
    const double dy = y < 1.0 ? 0.0 : d[static_cast<std::uint64_t>(y)];
    return dy - y * std::log(y) - (2.0 * oracle::kGamma - 1.0) * y;
  }
};

double quad_product(const BruteD& D, std::uint64_t n, std::uint64_t m, double X) {
  return oracle::piecewise_quadrature(
      [&](double x) { return D.delta(x / static_cast<double>(n)) * D.delta(x / static_cast<double>(m)); },
      {n, m}, X);
}

}  // namespace

TEST_CASE("zeta_real") {
  CHECK(zeta_real(1.5) == doctest::Approx(kZeta3Over2).epsilon(1e-14));
  CHECK(zeta_real(3.0) == doctest::Approx(kZeta3).epsilon(1e-14));
  CHECK(zeta_real(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(zeta_real(1.5) == doctest::Approx(2.612375348685488343).epsilon(1e-12));
  CHECK_THROWS_AS(zeta_real(1.0), InputError);
}

TEST_CASE("sum tau(n)^2 n^-s = zeta(s)^4 / zeta(2s), checked at s = 3") {
  const auto tau = tau_table(200000);
  CompensatedSum s;
  for (std::uint64_t n = 1; n <= 200000; ++n) {
    const double t = tau[n], nd = static_cast<double>(n);
    s.add(t * t / (nd * nd * nd));
  }
  const double z3 = zeta_real(3.0);
  CHECK(s.value() == doctest::Approx(z3 * z3 * z3 * z3 / zeta_real(6.0)).epsilon(1e-8));
}

TEST_CASE("tong_constant") {
  const auto small = tong_constant(1000);
  CHECK(small.a_zeta == doctest::Approx(0.654283977508845604).epsilon(1e-13));
  CHECK(small.a_series == doctest::Approx(0.4478273940962937).epsilon(1e-12));
  CHECK(small.bracket_contains_reference());
  const auto mid = tong_constant(100000);
  CHECK(mid.a_series == doctest::Approx(0.601291279510189).epsilon(1e-12));
  CHECK(mid.a_series > small.a_series);
  CHECK(mid.bracket_contains_reference());
  CHECK(tong_constant_reference() == doctest::Approx(small.a_zeta).epsilon(1e-15));
  CHECK_THROWS_AS(tong_constant(999), InputError);
}

TEST_CASE("integrate_local_product matches quadrature on one piece") {
  const DeltaEvaluator eval;
  for (double a : {1.0, 3.0, 40.0, 1000.0, 1e6}) {
    for (double h : {a * 0.25, a * 0.01, 1.0}) {
      if (h > a * 0.25) continue;
      // Delta(x/2) - 0.5 Delta(x/3) on [a, a+h], constants frozen at a.
      const double d2 = static_cast<double>(eval.summatory(static_cast<std::uint64_t>(a / 2)));
      const double d3 = static_cast<double>(eval.summatory(static_cast<std::uint64_t>(a / 3)));
      auto F = [&](double x) {
        return (d2 - DeltaEvaluator::main_term(x / 2)) - 0.5 * (d3 - DeltaEvaluator::main_term(x / 3));
      };
      const double la = std::log(a);
      const double g2 = 2.0 * kEulerGamma;
      LocalForm lf{F(a),
                   (la - std::log(2.0) + g2) / 2 - 0.5 * (la - std::log(3.0) + g2) / 3,
                   1.0 / 2 - 0.5 / 3};
      LocalForm lg{F(a), lf.slope, lf.curvature_weight};
      const double exact = integrate_local_product(lf, lg, a, h);
      const double quad = oracle::gauss_legendre([&](double x) { return F(x) * F(x); }, a, a + h, 200);
      CHECK(exact == doctest::Approx(quad).epsilon(1e-9));
    }
  }
}

TEST_CASE("l2_norm_delta frozen values") {
  // From 30-digit adaptive quadrature of the definition.
  CHECK(l2_norm_delta(1, 2.0) == doctest::Approx(0.466800647225335055).epsilon(1e-13));
  const double n3 = l2_norm_delta(3, 17.5);
  CHECK(n3 * n3 == doctest::Approx(7.31073903940232519).epsilon(1e-12));
  const double n1 = l2_norm_delta(1, 10.0);
  CHECK(n1 * n1 == doctest::Approx(7.24176742691394423).epsilon(1e-12));
  const DeltaEvaluator eval(100);
  CHECK(integrate_product(DilatedDeltaSum::single(2), DilatedDeltaSum::single(3), 20.0, eval) ==
        doctest::Approx(5.01255635505612132).epsilon(1e-12));
  CHECK_THROWS_AS(l2_norm_delta(5, 5.0), InputError);
  CHECK_THROWS_AS(l2_norm_delta(0, 5.0), InputError);
}

TEST_CASE("closed-form piecewise integrals match quadrature on random (n, X)") {
  const BruteD D(1000);
  const DeltaEvaluator eval(1000);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> pick_n(1, 12);
  std::uniform_real_distribution<double> pick_x(15.0, 1000.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = pick_n(rng);
    const auto m = (trial % 2 == 0) ? n : pick_n(rng);
    const double X = pick_x(rng);
    const double exact =
        integrate_product(DilatedDeltaSum::single(n), DilatedDeltaSum::single(m), X, eval);
    const double quad = quad_product(D, n, m, X);
    CHECK(exact == doctest::Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("integration is independent of thread count") {
  const DeltaEvaluator eval(200000);
  const DilatedDeltaSum f{{{1, 1.0}, {2, -4.0}, {4, 4.0}}};
  const double one = integrate_product(f, f, 200000.5, eval, {1});
  const double four = integrate_product(f, f, 200000.5, eval, {4});
  CHECK(one == four);
}

TEST_CASE("jacobi_eigenvalues") {
  const auto diag = jacobi_eigenvalues({3, 0, 0, 0, -1, 0, 0, 0, 2}, 3);
  CHECK(diag.eigenvalues == std::vector<double>{-1, 2, 3});
  CHECK(diag.sweeps == 0);

  const auto tri = jacobi_eigenvalues({2, 1, 0, 1, 2, 1, 0, 1, 2}, 3);
  CHECK(tri.eigenvalues[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(tri.eigenvalues[1] == doctest::Approx(2).epsilon(1e-14));
  CHECK(tri.eigenvalues[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));

  // Random symmetric 16x16: trace and Frobenius norm are preserved.
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  const std::size_t dim = 16;
  std::vector<double> a(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) a[i * dim + j] = a[j * dim + i] = nd(rng);
  double trace = 0, frob = 0;
  for (std::size_t i = 0; i < dim; ++i) trace += a[i * dim + i];
  for (double v : a) frob += v * v;
  const auto r = jacobi_eigenvalues(a, dim);
  double sum = 0, sq = 0;
  for (double ev : r.eigenvalues) {
    sum += ev;
    sq += ev * ev;
  }
  CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
  CHECK(sq == doctest::Approx(frob).epsilon(1e-12));
  CHECK(r.off_diagonal <= 1e-12 * std::sqrt(frob));

  CHECK_THROWS_AS(jacobi_eigenvalues({1, 1, 1, 1}, 2, 1e-12, 0), NumericError);
  CHECK_THROWS_AS(jacobi_eigenvalues({1, 1, 1}, 2), InputError);
}

TEST_CASE("gram_matrix") {
  const auto g1 = gram_matrix({1}, 5000.0);
  CHECK(g1.dim() == 1);
  CHECK(g1.eigen.eigenvalues[0] == g1.entry(0, 0));

  const auto g = gram_matrix({4, 1, 2, 2}, 20000.0);
  CHECK(g.moduli == std::vector<std::uint64_t>{1, 2, 4});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(g.entry(i, j) == g.entry(j, i));
  double sum = 0;
  for (double ev : g.eigen.eigenvalues) sum += ev;
  CHECK(sum == doctest::Approx(g.trace()).epsilon(1e-12));

  CHECK_THROWS_AS(gram_matrix({}, 100.0), InputError);
  CHECK_THROWS_AS(gram_matrix({1, 200}, 100.0), InputError);
  CHECK_THROWS_AS(gram_matrix({0, 2}, 100.0), InputError);
  std::vector<std::uint64_t> many(17);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = i + 1;
  CHECK_THROWS_AS(gram_matrix(many, 100.0), InputError);
}

TEST_CASE("quadratic_form agrees with direct integration of the combination") {
  const double X = 30000.0;
  const auto pp = convolution_coeffs(preset("parity"), preset("parity"));
  const auto gram = gram_matrix(pp.moduli(), X);
  const double form = quadratic_form(pp, gram);
  const double direct = combination_norm_squared(pp, X) * std::pow(X, -1.5);
  CHECK(form == doctest::Approx(direct).epsilon(1e-6));

  const auto oo = convolution_coeffs(preset("one"), preset("one"));
  CHECK(quadratic_form(oo, gram) == gram.entry(0, 0));

  // Complex coefficients: |.|^2 uses real and imaginary parts.
  ConvolutionCoeffs cplx{4, {{1, Complex(1.0, 2.0)}, {2, Complex(0.0, -1.0)}}};
  CHECK(quadratic_form(cplx, gram) ==
        doctest::Approx(combination_norm_squared(cplx, X) * std::pow(X, -1.5)).epsilon(1e-6));

  const auto q5 = convolution_coeffs(preset("qperiodic:5"), preset("qperiodic:5"));
  CHECK_THROWS_AS(quadratic_form(q5, gram), InputError);
}

TEST_CASE("lambda_q") {
  CHECK(lambda_q(5.0) == doctest::Approx(3.4929).epsilon(1e-4 / 3.4929));
  CHECK(lambda_q(1.0) == -2.0);
  for (int q = 1; q < 100; ++q) CHECK(lambda_q(q + 1) > lambda_q(q));
  CHECK(lambda_q(3.0) < 0.0);
  CHECK_THROWS_AS(lambda_q(0.5), InputError);
}

TEST_CASE("tau_correlation") {
  CHECK(tau_correlation(1, 1, 10) == 83);
  CHECK(tau_correlation(2, 3, 50) == 2736);  // brute force
  const auto s4 = tau_correlation(1, 1, 10000);
  const auto s5 = tau_correlation(1, 1, 100000);
  CHECK(s4 == 1504136);
  CHECK(s5 == 26324772);
  // Growth like x log^3 x, within a factor of 2.
  const double model = (1e5 * std::pow(std::log(1e5), 3)) / (1e4 * std::pow(std::log(1e4), 3));
  const double ratio = static_cast<double>(s5) / static_cast<double>(s4);
  CHECK(ratio > model / 2);
  CHECK(ratio < model * 2);
  CHECK(tau_correlation(2, 2, 1000) >= tau_correlation(1, 1, 1000));
  CHECK_THROWS_AS(tau_correlation(0, 1, 10), InputError);
  CHECK_THROWS_AS(tau_correlation(1, 1000, 1000000, MemoryBudget(1 << 20)), ResourceError);
}

TEST_CASE("omega_witness") {
  const auto w = omega_witness(2, 100);
  CHECK(w.tau_n == 6);
  CHECK(w.n == 45);
  const auto w12 = omega_witness(1, 30);
  CHECK(w12.n == 24);
  CHECK(w12.tau_n == 8);
  // The x = 12 case from a brute-force scan, via the brute-force oracle.
  CHECK(oracle::witness_brute(1, 12).n == 12);
  CHECK(oracle::witness_brute(1, 12).tau == 6);

  const auto big = omega_witness(2, 1000000);
  CHECK(big.tau_n >= 64);
  CHECK(big.n % 2 == 1);
  CHECK(big.n <= 1000000);

  for (std::uint64_t m : {1, 2, 6, 15, 30}) {
    for (std::uint64_t x : {30, 97, 1000, 4321, 100000}) {
      const auto brute = oracle::witness_brute(m, x);
      const auto fast = omega_witness(m, x);
      CHECK(fast.tau_n == brute.tau);
      CHECK(fast.n == brute.n);
      CHECK(oracle::gcd(fast.n, m) == 1);
    }
  }
  for (std::uint64_t m : {1, 2, 6}) {
    for (double x : {1e3, 1e4, 1e5, 1e6}) {
      const auto wit = omega_witness(m, static_cast<std::uint64_t>(x));
      const double lx = std::log(x);
      CHECK(static_cast<double>(wit.tau_n) >= std::exp(0.5 * std::log(2.0) * lx / std::log(lx)));
    }
  }
  CHECK_THROWS_AS(omega_witness(1, 29), InputError);
}
