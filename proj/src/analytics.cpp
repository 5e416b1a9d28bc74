#include "bpslab/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "bpslab/arith.hpp"
#include "bpslab/errors.hpp"

namespace bpslab {

double zeta_real(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw InputError("zeta_real: s must be > 1");
  constexpr int kDirect = 10;
  // B_2, B_4, ..., B_16
  constexpr std::array<double, 8> bernoulli = {1.0 / 6,   -1.0 / 30,     1.0 / 42, -1.0 / 30,
                                               5.0 / 66,  -691.0 / 2730, 7.0 / 6,  -3617.0 / 510};
  CompensatedSum sum;
  for (int n = 1; n < kDirect; ++n) sum.add(std::pow(static_cast<double>(n), -s));
  const double N = kDirect;
  sum.add(std::pow(N, 1.0 - s) / (s - 1.0));
  sum.add(0.5 * std::pow(N, -s));
  double rising = s;  // s (s+1) ... (s + 2k - 2)
  double power = std::pow(N, -s - 1.0);
  double factorial = 2.0;  // (2k)!
  for (int k = 1; k <= static_cast<int>(bernoulli.size()); ++k) {
    sum.add(bernoulli[k - 1] / factorial * rising * power);
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    power /= N * N;
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum.value();
}

double tong_constant_reference() {
  const double z = zeta_real(1.5);
  return z * z * z * z / (6.0 * kPi * kPi * zeta_real(3.0));
}

TongEstimate tong_constant(std::uint64_t n_max, const MemoryBudget& budget) {
  if (n_max < 1000) throw InputError("tong_constant: n_max must be >= 1000");
  budget.require(MemoryBudget::size_of(n_max + 1, 2 * sizeof(std::uint32_t) + 2), "tong_constant");
  TongEstimate est;
  est.n_max = n_max;
  const auto tau = tau_table(n_max);
  CompensatedSum sum;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double t = tau[n];
    const double nd = static_cast<double>(n);
    sum.add(t * t / (nd * std::sqrt(nd)));
  }
  const double scale = 1.0 / (6.0 * kPi * kPi);
  const double log_n = std::log(static_cast<double>(n_max));
  est.a_series = sum.value() * scale;
  est.tail_bracket = 8.0 * (log_n + 2.0) * (log_n + 2.0) / std::sqrt(static_cast<double>(n_max)) * scale;
  est.zeta_3_2 = zeta_real(1.5);
  est.zeta_3 = zeta_real(3.0);
  est.a_zeta = std::pow(est.zeta_3_2, 4) * scale / est.zeta_3;
  return est;
}

double l2_norm_delta(std::uint64_t n, double X, const IntegrationOptions& opts,
                     const MemoryBudget& budget) {
  if (n == 0) throw InputError("l2_norm_delta: n must be >= 1");
  if (!(X > static_cast<double>(n))) throw InputError("l2_norm_delta: requires X > n");
  const DeltaEvaluator eval(static_cast<std::uint64_t>(X / static_cast<double>(n)), budget);
  const auto single = DilatedDeltaSum::single(n);
  return std::sqrt(integrate_product(single, single, X, eval, opts));
}

double l2_tong_ratio(double norm, std::uint64_t n, double X, double tong_a) noexcept {
  return norm * norm / (tong_a * std::pow(static_cast<double>(n), -0.5) * std::pow(X, 1.5));
}

SymmetricEigen jacobi_eigenvalues(std::vector<double> a, std::size_t dim, double rel_tol,
                                  int max_sweeps) {
  if (a.size() != dim * dim) throw InputError("jacobi_eigenvalues: matrix size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * dim + j]; };
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (i != j) off += at(i, j) * at(i, j);
    return std::sqrt(off);
  };

  SymmetricEigen out;
  out.off_diagonal = off_norm();
  while (out.off_diagonal > rel_tol * norm) {
    if (out.sweeps == max_sweeps)
      throw NumericError("Jacobi iteration did not converge in " + std::to_string(max_sweeps) +
                         " sweeps");
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < dim; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
      }
    }
    ++out.sweeps;
    out.off_diagonal = off_norm();
  }
  for (std::size_t i = 0; i < dim; ++i) out.eigenvalues.push_back(at(i, i));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

double GramEstimate::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += entry(i, i);
  return t;
}

std::size_t GramEstimate::index_of(std::uint64_t n) const noexcept {
  const auto it = std::lower_bound(moduli.begin(), moduli.end(), n);
  return (it != moduli.end() && *it == n) ? static_cast<std::size_t>(it - moduli.begin()) : dim();
}

GramEstimate gram_matrix(std::vector<std::uint64_t> moduli, double X,
                         const IntegrationOptions& opts, const MemoryBudget& budget) {
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  if (moduli.empty()) throw InputError("gram_matrix: no moduli");
  if (moduli.front() == 0) throw InputError("gram_matrix: moduli must be >= 1");
  if (moduli.size() > kMaxGramDim)
    throw InputError("gram_matrix: at most " + std::to_string(kMaxGramDim) + " moduli");
  if (!(X > static_cast<double>(moduli.back())))
    throw InputError("gram_matrix: X must exceed the largest modulus");

  GramEstimate gram;
  gram.moduli = std::move(moduli);
  gram.X = X;
  const std::size_t dim = gram.dim();
  gram.entries.assign(dim * dim, 0.0);
  const DeltaEvaluator eval(static_cast<std::uint64_t>(X / static_cast<double>(gram.moduli.front())),
                            budget);
  const double scale = std::pow(X, -1.5);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double v = scale * integrate_product(DilatedDeltaSum::single(gram.moduli[i]),
                                                 DilatedDeltaSum::single(gram.moduli[j]), X, eval,
                                                 opts);
      gram.entries[i * dim + j] = gram.entries[j * dim + i] = v;
    }
  }
  gram.eigen = jacobi_eigenvalues(gram.entries, dim);
  return gram;
}

double quadratic_form(const ConvolutionCoeffs& coeffs, const GramEstimate& gram) {
  std::vector<std::size_t> idx;
  for (const auto& t : coeffs.support) {
    const std::size_t i = gram.index_of(t.n);
    if (i == gram.dim())
      throw InputError("quadratic_form: modulus " + std::to_string(t.n) + " not in the Gram matrix");
    idx.push_back(i);
  }
  CompensatedSum sum;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const Complex w = coeffs.support[a].value * std::conj(coeffs.support[b].value);
      sum.add(w.real() * gram.entry(idx[a], idx[b]));
    }
  }
  return sum.value();
}

double combination_norm_squared(const ConvolutionCoeffs& coeffs, double X,
                                const IntegrationOptions& opts, const MemoryBudget& budget) {
  if (coeffs.support.empty()) return 0.0;
  DilatedDeltaSum re, im;
  for (const auto& [n, g] : coeffs.support) {
    if (g.real() != 0.0) re.terms.emplace_back(n, g.real());
    if (g.imag() != 0.0) im.terms.emplace_back(n, g.imag());
  }
  const DeltaEvaluator eval(static_cast<std::uint64_t>(X), budget);
  return integrate_product(re, re, X, eval, opts) + integrate_product(im, im, X, eval, opts);
}

double lambda_q(double q) {
  if (!(q >= 1.0)) throw InputError("lambda_q: q must be >= 1");
  return std::pow(q, 1.5) - 2.0 * std::pow(q, 0.75) - 1.0;
}

std::uint64_t tau_correlation(std::uint64_t a, std::uint64_t b, std::uint64_t x,
                              const MemoryBudget& budget) {
  if (a == 0 || b == 0) throw InputError("tau_correlation: a and b must be >= 1");
  std::uint64_t top = 0;
  if (!checked_mul(std::max(a, b), x, top)) throw RangeError("tau_correlation: max(a,b)*x overflows");
  budget.require(MemoryBudget::size_of(top + 1, sizeof(std::uint32_t) + 2), "tau_correlation");
  const auto tau = tau_table(top);
  unsigned __int128 sum = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    sum += static_cast<unsigned __int128>(tau[a * n]) * tau[b * n];
  if (sum > std::numeric_limits<std::uint64_t>::max())
    throw RangeError("tau_correlation: sum overflows 64 bits");
  return static_cast<std::uint64_t>(sum);
}

namespace {

struct WitnessSearch {
  std::uint64_t x;
  std::vector<std::uint64_t> primes;
  std::uint64_t best_n = 1;
  std::uint64_t best_tau = 1;
  int best_omega = 0;

  void run(std::size_t idx, int max_exp, std::uint64_t n, std::uint64_t tau, int omega) {
    if (tau > best_tau || (tau == best_tau && n < best_n)) {
      best_n = n;
      best_tau = tau;
      best_omega = omega;
    }
    if (idx == primes.size()) return;
    const std::uint64_t p = primes[idx];
    std::uint64_t v = n;
    for (int e = 1; e <= max_exp; ++e) {
      if (v > x / p) break;
      v *= p;
      run(idx + 1, e, v, tau * static_cast<std::uint64_t>(e + 1), omega + 1);
    }
  }
};

}  // namespace

OmegaWitness omega_witness(std::uint64_t m, std::uint64_t x, double c) {
  if (x < 30) throw InputError("omega_witness: x must be >= 30");
  if (m == 0) throw InputError("omega_witness: m must be >= 1");
  WitnessSearch search{x, {}};
  // Enough primes that their product exceeds x.
  std::uint64_t product = 1;
  for (std::uint64_t p = 2; product <= x; ++p) {
    if (!is_prime(p) || m % p == 0) continue;
    search.primes.push_back(p);
    if (product > x / p) break;
    product *= p;
  }
  search.run(0, 64, 1, 1, 0);

  OmegaWitness w;
  w.x = x;
  w.m = m;
  w.n = search.best_n;
  w.tau_n = search.best_tau;
  w.omega_n = search.best_omega;
  w.c = c;
  const double lx = std::log(static_cast<double>(x));
  w.ratio = static_cast<double>(w.tau_n) / std::exp(c * lx / std::log(lx));
  return w;
}

}  // namespace bpslab
