#include "bpslab/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "bpslab/errors.hpp"

namespace bpslab {

LocalPolynomial local_polynomial(const MultiplicativeSpec& spec, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("local_polynomial: p = " + std::to_string(p) + " is not prime");
  LocalPolynomial poly{p, {Complex(1.0)}};
  const auto* local = spec.find(p);
  if (local == nullptr) return poly;
  for (int k = 1; k <= local->stabilization_exponent(); ++k)
    poly.coefficients.push_back(local->at(k) - local->at(k - 1));
  return poly;
}

Complex ConvolutionCoeffs::at(std::uint64_t n) const noexcept {
  auto it = std::lower_bound(support.begin(), support.end(), n,
                             [](const GTerm& t, std::uint64_t v) { return t.n < v; });
  return (it != support.end() && it->n == n) ? it->value : Complex(0.0);
}

std::vector<std::uint64_t> ConvolutionCoeffs::moduli() const {
  std::vector<std::uint64_t> out;
  for (const auto& t : support) out.push_back(t.n);
  return out;
}

ConvolutionCoeffs convolution_coeffs(const MultiplicativeSpec& f1, const MultiplicativeSpec& f2) {
  ConvolutionCoeffs out;
  if (!checked_mul(f1.period(), f2.period(), out.modulus))
    throw RangeError("m1 * m2 overflows 64 bits");

  std::vector<std::uint64_t> primes;
  for (const auto& l : f1.exceptional()) primes.push_back(l.p);
  for (const auto& l : f2.exceptional()) primes.push_back(l.p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  // Start from g(1) = 1 and fold in one Euler factor per prime.
  std::vector<GTerm> terms{{1, Complex(1.0)}};
  for (std::uint64_t p : primes) {
    const auto a = local_polynomial(f1, p).coefficients;
    const auto b = local_polynomial(f2, p).coefficients;
    std::vector<Complex> prod(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];

    std::vector<GTerm> next;
    for (const auto& t : terms) {
      std::uint64_t pk = 1;
      for (std::size_t k = 0; k < prod.size(); ++k) {
        if (k > 0) pk *= p;  // p^k divides m1 m2, no overflow
        next.push_back({t.n * pk, t.value * prod[k]});
      }
    }
    terms = std::move(next);
  }
  std::erase_if(terms, [](const GTerm& t) { return t.value == 0.0; });
  std::sort(terms.begin(), terms.end(), [](const GTerm& a, const GTerm& b) { return a.n < b.n; });
  out.support = std::move(terms);
  return out;
}

GMoments verify_g_moments(const ConvolutionCoeffs& coeffs) {
  CompensatedComplexSum m0, m1;
  for (const auto& [n, g] : coeffs.support) {
    const double nd = static_cast<double>(n);
    m0.add(g / nd);
    m1.add(g * (std::log(nd) / nd));
  }
  return {m0.value(), m1.value()};
}

Complex delta_combination(const ConvolutionCoeffs& coeffs, const DeltaEvaluator& eval, double x) {
  CompensatedComplexSum sum;
  for (const auto& [n, g] : coeffs.support) sum.add(g * eval.delta(x / static_cast<double>(n)));
  return sum.value();
}

Complex main_term_contribution(const GMoments& moments, double x) {
  const double lead = x * std::log(x) + (2.0 * kEulerGamma - 1.0) * x;
  return moments.moment0 * lead - moments.moment1 * x;
}

ValueTable convolution_partial_sums(const MultiplicativeSpec& f1, const MultiplicativeSpec& f2,
                                    std::uint64_t n, const MemoryBudget& budget) {
  // Three tables live at once.
  budget.require(MemoryBudget::size_of(n + 1, 3 * sizeof(Complex)), "convolution_partial_sums");
  return prefix_sums(dirichlet_convolve(sieve_values(f1, n, budget), sieve_values(f2, n, budget)));
}

IdentityResult verify_theorem4(const MultiplicativeSpec& f1, const MultiplicativeSpec& f2,
                               std::vector<double> x_samples, const MemoryBudget& budget) {
  const ConvolutionCoeffs coeffs = convolution_coeffs(f1, f2);
  const auto threshold = static_cast<double>(coeffs.modulus);
  for (double x : x_samples) {
    if (!(x > threshold))
      throw InputError("verify_theorem4: sample x = " + std::to_string(x) +
                       " must exceed m1*m2 = " + std::to_string(coeffs.modulus));
  }
  IdentityResult result;
  result.moments = verify_g_moments(coeffs);
  if (x_samples.empty()) return result;
  std::sort(x_samples.begin(), x_samples.end());
  x_samples.erase(std::unique(x_samples.begin(), x_samples.end()), x_samples.end());

  const auto top = static_cast<std::uint64_t>(x_samples.back());
  const ValueTable sums = convolution_partial_sums(f1, f2, top, budget);
  const DeltaEvaluator eval;  // hyperbola method, independent of the sieve
  for (double x : x_samples) {
    IdentityRow row;
    row.x = x;
    row.left = sums[static_cast<std::uint64_t>(x)];
    row.main_term = main_term_contribution(result.moments, x);
    row.right = row.main_term + delta_combination(coeffs, eval, x);
    row.residual = std::abs(row.left - row.right);
    result.max_residual = std::max(result.max_residual, row.residual);
    result.max_scaled_residual =
        std::max(result.max_scaled_residual, row.residual / (1.0 + std::abs(row.left)));
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace bpslab
