#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpslab/arith.hpp"
#include "bpslab/numeric.hpp"

namespace bpslab {

// Values of f at the powers of one prime. values[k-1] = f(p^k) for
// k = 1..a, and f(p^k) = values[a-1] for every k >= a. The stabilization is
// part of the representation, so such data can never violate it.
struct LocalPrimeData {
  std::uint64_t p = 0;
  std::vector<Complex> values;

  int stabilization_exponent() const noexcept { return static_cast<int>(values.size()); }
  // f(p^k) for any k >= 0.
  Complex at(int k) const noexcept;
};

// A multiplicative f given by finitely many exceptional primes; f(p^k) = 1
// for every other prime. Immutable after construction.
class MultiplicativeSpec {
 public:
  MultiplicativeSpec() = default;

  // Validates primality, distinct primes, finite values, a >= 1 and that the
  // period fits in 64 bits. Sorts by prime.
  explicit MultiplicativeSpec(std::vector<LocalPrimeData> exceptional);

  const std::vector<LocalPrimeData>& exceptional() const noexcept { return exceptional_; }
  const LocalPrimeData* find(std::uint64_t p) const noexcept;

  // f(p^k) for arbitrary prime p.
  Complex local_value(std::uint64_t p, int k) const noexcept;

  // m = prod p^a over exceptional primes.
  std::uint64_t period() const noexcept { return period_; }

 private:
  std::vector<LocalPrimeData> exceptional_;
  std::uint64_t period_ = 1;
};

Complex evaluate(const MultiplicativeSpec& spec, std::uint64_t n, const SpfSieve* sieve = nullptr);

std::uint64_t period(const MultiplicativeSpec& spec);

// sum_{k>=0} f(q^k) / q^k, with the geometric tail in closed form.
Complex euler_factor(const MultiplicativeSpec& spec, std::uint64_t q);

struct EulerFactorEntry {
  std::uint64_t q;
  Complex factor;
  bool is_zero;
};

struct EulerFactorReport {
  std::vector<EulerFactorEntry> entries;
  bool condition_i_holds = false;
  // Conditions ii and iii are properties of the representation.
  bool condition_ii_holds = true;
  bool condition_iii_holds = true;
  std::uint64_t period = 1;
  double tolerance = 0.0;

  std::optional<std::uint64_t> vanishing_prime() const noexcept;
};

inline constexpr double kDefaultZeroTolerance = 1e-9;

EulerFactorReport check_conditions(const MultiplicativeSpec& spec,
                                   double tolerance = kDefaultZeroTolerance);

// phi(m) * prod_{p | m} euler_factor(p): the sum of f over one period.
Complex period_sum_formula(const MultiplicativeSpec& spec);

// sum_{n <= m} f(n) by direct evaluation, plus sum |f(n)| (the bound on all
// partial sums when the period sum vanishes).
struct PeriodSums {
  Complex sum;
  double abs_sum;
};
PeriodSums period_sum_direct(const MultiplicativeSpec& spec);

// D(f, g; x) = (sum_{p <= x} (1 - Re f(p) conj(g(p))) / p)^{1/2}.
// Throws DomainError carrying the raw sum when it is negative.
double pretentious_distance(const MultiplicativeSpec& f, const MultiplicativeSpec& g, double x);

}  // namespace bpslab
