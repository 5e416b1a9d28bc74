#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace bpslab {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Neumaier's variant of Kahan summation. Order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex v) noexcept {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// floor(sqrt(n)) exact for all 64-bit n.
inline std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// Returns false on overflow.
inline bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) noexcept {
  return !__builtin_mul_overflow(a, b, &out);
}

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace bpslab
