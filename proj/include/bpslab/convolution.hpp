#pragma once

#include <cstdint>
#include <vector>

#include "bpslab/numeric.hpp"
#include "bpslab/sieve.hpp"
#include "bpslab/spec.hpp"

namespace bpslab {

// Coefficients of sum_k (f * mu)(p^k) z^k. coefficients[0] = 1 and
// coefficients[k] = f(p^k) - f(p^{k-1}); zero beyond the stabilization
// exponent, so the list stops there.
struct LocalPolynomial {
  std::uint64_t p = 0;
  std::vector<Complex> coefficients;

  int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
};

LocalPolynomial local_polynomial(const MultiplicativeSpec& spec, std::uint64_t p);

struct GTerm {
  std::uint64_t n;
  Complex value;
};

// g = (f1 * mu) * (f2 * mu) on the divisors of m1 m2, so that
// f1 * f2 = g * tau. Entries with g(n) exactly 0 are dropped.
struct ConvolutionCoeffs {
  std::uint64_t modulus = 1;  // m1 m2
  std::vector<GTerm> support;  // ascending n

  Complex at(std::uint64_t n) const noexcept;
  std::vector<std::uint64_t> moduli() const;
};

ConvolutionCoeffs convolution_coeffs(const MultiplicativeSpec& f1, const MultiplicativeSpec& f2);

struct GMoments {
  Complex moment0;  // sum g(n) / n
  Complex moment1;  // sum g(n) log n / n
};
GMoments verify_g_moments(const ConvolutionCoeffs& coeffs);

// sum_{n | m1 m2} g(n) Delta(x / n).
Complex delta_combination(const ConvolutionCoeffs& coeffs, const DeltaEvaluator& eval, double x);

// x log x * M0 - x * M1 + (2 gamma - 1) x * M0 for the moments of g. Zero
// when both factors have a vanishing Euler factor; for f1 = f2 = 1 it is the
// main term of D(x).
Complex main_term_contribution(const GMoments& moments, double x);

struct IdentityRow {
  double x;
  Complex left;       // sum_{n <= x} (f1 * f2)(n), from sieved tables
  Complex main_term;  // main_term_contribution at x
  Complex right;      // main_term + sum g(n) Delta(x / n)
  double residual;
};

struct IdentityResult {
  GMoments moments;
  std::vector<IdentityRow> rows;  // sorted by x, duplicates removed
  double max_residual = 0.0;
  // max |left - right| / (1 + |left|)
  double max_scaled_residual = 0.0;
};

// Every sample must exceed m1 m2. Tables are sieved once up to max(x).
IdentityResult verify_theorem4(const MultiplicativeSpec& f1, const MultiplicativeSpec& f2,
                               std::vector<double> x_samples, const MemoryBudget& budget = {});

// Partial sums of f1 * f2 up to n, via sieve and Dirichlet convolution.
ValueTable convolution_partial_sums(const MultiplicativeSpec& f1, const MultiplicativeSpec& f2,
                                    std::uint64_t n, const MemoryBudget& budget = {});

}  // namespace bpslab
