#pragma once
// Independent reference computations for tests. Nothing here calls into the
// sieve, hyperbola or piecewise-integration code it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double kGamma = 0.57721566490153286060651209008240243;

inline std::uint64_t tau_brute(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  return count;
}

inline std::uint64_t divisor_summatory_brute(std::uint64_t x) {
  std::uint64_t s = 0;
  for (std::uint64_t n = 1; n <= x; ++n) s += tau_brute(n);
  return s;
}

// Delta(y) for y > 0 directly from the definition with a brute-force D.
inline double delta_brute(double y) {
  const double d = y < 1.0 ? 0.0 : static_cast<double>(divisor_summatory_brute(static_cast<std::uint64_t>(y)));
  return d - y * std::log(y) - (2.0 * kGamma - 1.0) * y;
}

// (a*b)(n) by walking the divisors of n.
template <class F, class G>
std::complex<double> convolve_at(F a, G b, std::uint64_t n) {
  std::complex<double> s = 0.0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += a(d) * b(n / d);
  return s;
}

inline double parity(std::uint64_t n) { return (n % 2 == 1) ? 1.0 : -1.0; }

// Composite 5-point Gauss-Legendre on [lo, hi] with `panels` panels.
inline double gauss_legendre(const std::function<double(double)>& f, double lo, double hi, int panels) {
  static constexpr std::array<double, 5> nodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                  -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {0.5688888888888889, 0.4786286704993665,
                                                    0.4786286704993665, 0.2369268850561891,
                                                    0.2369268850561891};
  double sum = 0.0;
  const double h = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * h;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + 0.5 * h * nodes[i]) * 0.5 * h;
  }
  return sum;
}

// int_1^X f over the smooth pieces between integer multiples of the moduli,
// with 200 panels (1000 nodes) per piece.
inline double piecewise_quadrature(const std::function<double(double)>& f,
                                   const std::vector<std::uint64_t>& moduli, double X) {
  std::vector<double> cuts{1.0, X};
  for (std::uint64_t n : moduli)
    for (std::uint64_t k = 1; static_cast<double>(k * n) < X; ++k)
      if (k * n > 1) cuts.push_back(static_cast<double>(k * n));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += gauss_legendre(f, cuts[i], cuts[i + 1], 200);
  return total;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Smallest n <= x with gcd(n, m) = 1 maximizing tau(n), using a divisor sieve.
struct BruteWitness {
  std::uint64_t n;
  std::uint64_t tau;
};
inline BruteWitness witness_brute(std::uint64_t m, std::uint64_t x) {
  std::vector<std::uint32_t> tau(x + 1, 0);
  for (std::uint64_t d = 1; d <= x; ++d)
    for (std::uint64_t k = d; k <= x; k += d) ++tau[k];
  BruteWitness best{1, 1};
  for (std::uint64_t n = 1; n <= x; ++n)
    if (gcd(n, m) == 1 && tau[n] > best.tau) best = {n, tau[n]};
  return best;
}

}  // namespace oracle
