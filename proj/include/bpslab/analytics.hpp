#pragma once

#include <cstdint>
#include <vector>

#include "bpslab/convolution.hpp"
#include "bpslab/integrate.hpp"
#include "bpslab/sieve.hpp"

namespace bpslab {

// Reference values used to cross-check the Euler-Maclaurin evaluation.
inline constexpr double kZeta3Over2 = 2.612375348685488343;
inline constexpr double kZeta3 = 1.202056903159594285;
// Best known exponent for Delta(x) = O(x^{alpha + eps}) (Huxley, 2003).
inline constexpr double kHuxleyExponent = 131.0 / 416.0;

// Riemann zeta for real s > 1: Euler-Maclaurin with 8 Bernoulli corrections.
double zeta_real(double s);

// The constant A in int_1^X Delta(x)^2 dx ~ A X^{3/2}, computed two ways.
struct TongEstimate {
  std::uint64_t n_max = 0;
  // (1 / 6 pi^2) sum_{n <= n_max} tau(n)^2 / n^{3/2}
  double a_series = 0.0;
  // The omitted tail lies in [0, tail_bracket], in the same units as A.
  double tail_bracket = 0.0;
  // zeta(3/2)^4 / (6 pi^2 zeta(3)), from sum tau(n)^2 n^{-s} = zeta(s)^4 / zeta(2s).
  double a_zeta = 0.0;
  double zeta_3_2 = 0.0;
  double zeta_3 = 0.0;

  double relative_disagreement() const noexcept { return (a_zeta - a_series) / a_zeta; }
  bool bracket_contains_reference() const noexcept {
    return a_zeta >= a_series && a_zeta - a_series <= tail_bracket;
  }
};

TongEstimate tong_constant(std::uint64_t n_max, const MemoryBudget& budget = {});

// Just the reference value; cheap.
double tong_constant_reference();

// (int_1^X Delta(x/n)^2 dx)^{1/2}, exact piecewise.
double l2_norm_delta(std::uint64_t n, double X, const IntegrationOptions& opts = {},
                     const MemoryBudget& budget = {});

// l2^2 / (A n^{-1/2} X^{3/2}); tends to 1 as X grows.
double l2_tong_ratio(double norm, std::uint64_t n, double X, double tong_a) noexcept;

struct SymmetricEigen {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  double off_diagonal = 0.0;  // Frobenius norm of the off-diagonal part at exit
};

// Cyclic Jacobi rotations on a dense symmetric matrix (row-major, dim x dim).
// Converged when the off-diagonal norm is <= rel_tol * ||A||_F. Throws
// NumericError after max_sweeps.
SymmetricEigen jacobi_eigenvalues(std::vector<double> matrix, std::size_t dim,
                                  double rel_tol = 1e-12, int max_sweeps = 100);

struct GramEstimate {
  std::vector<std::uint64_t> moduli;  // ascending, distinct
  double X = 0.0;
  std::vector<double> entries;  // row-major, X^{-3/2} int_1^X Delta(x/n) Delta(x/m) dx
  SymmetricEigen eigen;

  std::size_t dim() const noexcept { return moduli.size(); }
  double entry(std::size_t i, std::size_t j) const { return entries[i * dim() + j]; }
  double trace() const noexcept;
  // Index of modulus n, or dim() if absent.
  std::size_t index_of(std::uint64_t n) const noexcept;
};

inline constexpr std::size_t kMaxGramDim = 16;

GramEstimate gram_matrix(std::vector<std::uint64_t> moduli, double X,
                         const IntegrationOptions& opts = {}, const MemoryBudget& budget = {});

// Re sum_{n,m} g_n conj(g_m) a_{n,m}.
double quadratic_form(const ConvolutionCoeffs& coeffs, const GramEstimate& gram);

// int_1^X |sum_n g_n Delta(x/n)|^2 dx, integrated as one piecewise function.
double combination_norm_squared(const ConvolutionCoeffs& coeffs, double X,
                                const IntegrationOptions& opts = {},
                                const MemoryBudget& budget = {});

// q^{3/2} - 2 q^{3/4} - 1, for real q >= 1.
double lambda_q(double q);

// sum_{n <= x} tau(a n) tau(b n), exact.
std::uint64_t tau_correlation(std::uint64_t a, std::uint64_t b, std::uint64_t x,
                              const MemoryBudget& budget = {});

struct OmegaWitness {
  std::uint64_t x = 0;
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  std::uint64_t tau_n = 1;
  int omega_n = 0;
  // tau(n) / exp(c log x / log log x)
  double ratio = 0.0;
  double c = 0.0;
};

// The smallest n <= x coprime to m with maximal tau(n). Searches
// non-increasing exponent vectors over the smallest primes coprime to m,
// which contains the smallest maximizer.
OmegaWitness omega_witness(std::uint64_t m, std::uint64_t x, double c = 0.6931471805599453);

}  // namespace bpslab
