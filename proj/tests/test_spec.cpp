#include <doctest.h>

#include <random>

#include "bpslab/arith.hpp"
#include "bpslab/errors.hpp"
#include "bpslab/spec.hpp"
#include "bpslab/spec_io.hpp"
#include "oracles.hpp"

using namespace bpslab;

namespace {

// Random spec over a few small primes with period <= max_period.
MultiplicativeSpec random_spec(std::mt19937_64& rng, std::uint64_t max_period) {
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> exp_dist(1, 3);
  std::vector<LocalPrimeData> locals;
  std::uint64_t m = 1;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    if (rng() % 2) continue;
    const int a = exp_dist(rng);
    std::uint64_t pa = 1;
    for (int k = 0; k < a; ++k) pa *= p;
    if (m * pa > max_period) continue;
    m *= pa;
    LocalPrimeData local{p, {}};
    for (int k = 0; k < a; ++k) local.values.emplace_back(val(rng), val(rng));
    locals.push_back(local);
  }
  return MultiplicativeSpec(locals);
}

// Forces condition i at the smallest exceptional prime by solving for v_a.
MultiplicativeSpec with_vanishing_factor(const MultiplicativeSpec& spec) {
  auto locals = spec.exceptional();
  if (locals.empty()) return spec;
  auto& l = locals.front();
  const double q = static_cast<double>(l.p);
  const int a = l.stabilization_exponent();
  Complex head = 1.0;
  double w = 1.0;
  for (int k = 1; k < a; ++k) {
    w /= q;
    head += l.values[k - 1] * w;
  }
  // head + v_a q^{1-a}/(q-1) = 0
  l.values[a - 1] = -head * (q - 1.0) * std::pow(q, a - 1);
  return MultiplicativeSpec(locals);
}

}  // namespace

TEST_CASE("evaluate on presets") {
  CHECK(evaluate(preset("example1"), 9).real() == -15.0);
  CHECK(evaluate(preset("example1"), 27).real() == 0.0);
  CHECK(evaluate(preset("example1"), 3 * 7 * 11).real() == 2.0);
  CHECK(evaluate(preset("example2"), 25).real() == doctest::Approx(-20.0 - 4.0 * kPi));
  CHECK(evaluate(preset("example2"), 125 * 3).real() == doctest::Approx(-20.0 - 4.0 * kPi));
  CHECK(evaluate(preset("qperiodic:7"), 49).real() == -6.0);
  for (const char* name : {"one", "parity", "example1", "example2", "qperiodic:5"})
    CHECK(evaluate(preset(name), 1) == Complex(1.0));

  const auto parity = preset("parity");
  CHECK(evaluate(parity, 6).real() == -1.0);
  for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(evaluate(parity, n).real() == oracle::parity(n));
}

TEST_CASE("evaluate agrees between sieve and stripping paths") {
  const auto spec = preset("example1");
  const SpfSieve sieve(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) CHECK(evaluate(spec, n, &sieve) == evaluate(spec, n));
  // Outside the sieve range: trial division.
  CHECK(evaluate(spec, 9ULL * 1000003ULL, &sieve).real() == -15.0);
  CHECK_THROWS_AS(evaluate(spec, 0), InputError);
}

TEST_CASE("period") {
  CHECK(period(preset("example1")) == 27);
  CHECK(period(preset("example2")) == 25);
  CHECK(period(preset("parity")) == 2);
  CHECK(period(preset("one")) == 1);
  CHECK(period(preset("qperiodic:13")) == 13);
  // 2^64 does not fit.
  std::vector<Complex> vals(64, Complex(1.0));
  CHECK_THROWS_AS(MultiplicativeSpec({LocalPrimeData{2, vals}}), RangeError);
  vals.pop_back();
  CHECK(MultiplicativeSpec({LocalPrimeData{2, vals}}).period() == (1ULL << 63));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(MultiplicativeSpec({LocalPrimeData{4, {1.0}}}), InputError);
  CHECK_THROWS_AS(MultiplicativeSpec({LocalPrimeData{1, {1.0}}}), InputError);
  CHECK_THROWS_AS(MultiplicativeSpec({LocalPrimeData{3, {}}}), InputError);
  CHECK_THROWS_AS(MultiplicativeSpec({LocalPrimeData{3, {1.0}}, LocalPrimeData{3, {2.0}}}), InputError);
  CHECK_THROWS_AS(MultiplicativeSpec({LocalPrimeData{3, {Complex(NAN, 0)}}}), InputError);
  const MultiplicativeSpec sorted({LocalPrimeData{5, {1.0}}, LocalPrimeData{2, {1.0}}});
  CHECK(sorted.exceptional().front().p == 2);
}

TEST_CASE("euler_factor") {
  CHECK(std::abs(euler_factor(preset("example1"), 3)) <= 1e-15);
  CHECK(std::abs(euler_factor(preset("example2"), 5)) <= 1e-12);
  CHECK(std::abs(euler_factor(preset("parity"), 2)) == 0.0);
  CHECK(std::abs(euler_factor(preset("qperiodic:5"), 5)) <= 1e-15);
  CHECK(euler_factor(preset("example1"), 7).real() == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(euler_factor(preset("one"), 9), InputError);
}

TEST_CASE("euler_factor closed form matches the truncated series") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = random_spec(rng, 100000);
    for (const auto& local : spec.exceptional()) {
      Complex series = 0.0;
      for (int k = 60; k >= 0; --k)
        series += local.at(k) * std::pow(static_cast<double>(local.p), -k);
      CHECK(std::abs(euler_factor(spec, local.p) - series) <= 1e-12);
    }
  }
}

TEST_CASE("check_conditions") {
  const auto ex2 = check_conditions(preset("example2"));
  CHECK(ex2.condition_i_holds);
  CHECK(ex2.vanishing_prime() == 5);
  CHECK(ex2.period == 25);

  const MultiplicativeSpec no_zero({LocalPrimeData{3, {2.0}}});
  const auto r = check_conditions(no_zero);
  CHECK_FALSE(r.condition_i_holds);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].factor.real() == doctest::Approx(2.0));

  CHECK(check_conditions(preset("parity")).vanishing_prime() == 2);
  CHECK_FALSE(check_conditions(preset("one")).condition_i_holds);
  CHECK_THROWS_AS(check_conditions(preset("one"), 0.0), InputError);

  // is_zero is exactly |factor| <= tol.
  const auto tight = check_conditions(no_zero, 2.0 + 1e-12);
  CHECK(tight.condition_i_holds);
}

TEST_CASE("period_sum_formula") {
  CHECK(std::abs(period_sum_formula(preset("example1"))) <= 1e-12);
  const MultiplicativeSpec no_zero({LocalPrimeData{3, {2.0}}});
  CHECK(period_sum_formula(no_zero).real() == doctest::Approx(4.0));
  CHECK(period_sum_direct(no_zero).sum.real() == 4.0);  // 1 + 1 + 2
  CHECK(period_sum_formula(preset("one")) == Complex(1.0));
}

TEST_CASE("property: multiplicativity, periodicity, period sum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = random_spec(rng, 100000);
    const std::uint64_t m = spec.period();

    std::uniform_int_distribution<std::uint64_t> pick(1, 10000);
    for (int i = 0; i < 200; ++i) {
      const auto a = pick(rng), b = pick(rng) % 100 + 1;
      if (oracle::gcd(a, b) != 1 || a * b > 10000) continue;
      const Complex lhs = evaluate(spec, a * b), rhs = evaluate(spec, a) * evaluate(spec, b);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
    for (std::uint64_t n = 1; n <= 10000; n += 7) {
      const std::uint64_t r = n % m == 0 ? m : n % m;
      CHECK(std::abs(evaluate(spec, n) - evaluate(spec, r)) <= 1e-12 * std::max(1.0, std::abs(evaluate(spec, r))));
    }

    const auto direct = period_sum_direct(spec);
    CHECK(std::abs(period_sum_formula(spec) - direct.sum) <= 1e-9 * std::max(1.0, static_cast<double>(m)));
  }
}

TEST_CASE("property: condition i implies partial sums bounded by one period") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = with_vanishing_factor(random_spec(rng, 2000));
    if (spec.exceptional().empty()) continue;
    REQUIRE(check_conditions(spec).condition_i_holds);
    const double bound = period_sum_direct(spec).abs_sum;
    Complex s = 0.0;
    double worst = 0.0;
    for (std::uint64_t x = 1; x <= 100000; ++x) {
      s += evaluate(spec, x);
      worst = std::max(worst, std::abs(s));
    }
    CHECK(worst <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("pretentious_distance") {
  CHECK(pretentious_distance(preset("parity"), preset("parity"), 1000.0) == 0.0);
  CHECK(pretentious_distance(preset("one"), preset("one"), 50.0) == 0.0);
  CHECK(pretentious_distance(preset("parity"), preset("one"), 10.0) == doctest::Approx(1.0));
  const MultiplicativeSpec shifted({LocalPrimeData{3, {1.0}}});
  CHECK(pretentious_distance(preset("one"), shifted, 100.0) == 0.0);

  // |f(p)| > 1 can drive the sum negative: 1 - 16 at p = 5.
  try {
    pretentious_distance(preset("qperiodic:5"), preset("qperiodic:5"), 10.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.raw_value == doctest::Approx(-15.0 / 5.0));
  }
  CHECK_THROWS_AS(pretentious_distance(preset("one"), preset("one"), 1.5), InputError);
}

TEST_CASE("spec files") {
  const auto spec = parse_spec(R"({"exceptional":[{"p":3,"values":[[2,0],[-15,0],[0,0]]}]})");
  CHECK(spec.period() == 27);
  CHECK(evaluate(spec, 9).real() == -15.0);

  const auto round = parse_spec(to_json(preset("example2")));
  CHECK(evaluate(round, 25) == evaluate(preset("example2"), 25));

  CHECK_THROWS_AS(parse_spec(R"({"exceptional":[{"p":4,"values":[[1,0]]}]})"), InputError);
  CHECK_THROWS_AS(parse_spec(R"({"exceptional":[{"p":3,"values":[[1]]}]})"), InputError);
  CHECK_THROWS_AS(parse_spec(R"({"exceptional":[{"p":-3,"values":[[1,0]]}]})"), InputError);
  CHECK_THROWS_AS(parse_spec(R"({"other":[]})"), InputError);
  try {
    parse_spec("{\n  \"exceptional\": [\n    {\"p\": 3, \"values\": [[2, 0],]}\n  ]\n}");
    FAIL("expected parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.json"), IoError);
  CHECK_THROWS_AS(preset("qperiodic:9"), InputError);
  CHECK_THROWS_AS(preset("nope"), InputError);
}
