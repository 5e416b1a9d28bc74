#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bpslab/numeric.hpp"
#include "bpslab/spec.hpp"

namespace bpslab {

// Upper bound on bytes a single bulk table may allocate.
class MemoryBudget {
 public:
  static constexpr std::uint64_t kDefaultBytes = 2ULL << 30;

  MemoryBudget() = default;
  explicit MemoryBudget(std::uint64_t bytes) : bytes_(bytes) {}
  static MemoryBudget from_gib(double gib);
  // BPSLAB_MEM_GIB if set and valid, otherwise the default.
  static MemoryBudget from_env();

  std::uint64_t bytes() const noexcept { return bytes_; }
  // Throws ResourceError when `needed` exceeds the budget.
  void require(std::uint64_t needed, const char* what) const;
  // Bytes for `count` elements of `elem` bytes each, saturating.
  static std::uint64_t size_of(std::uint64_t count, std::uint64_t elem) noexcept;

 private:
  std::uint64_t bytes_ = kDefaultBytes;
};

// f(1..N); index 0 is unused and holds 0.
class ValueTable {
 public:
  ValueTable() = default;
  explicit ValueTable(std::uint64_t n) : values_(n + 1, Complex(0.0)) {}
  ValueTable(std::vector<Complex> values_with_zero_slot) : values_(std::move(values_with_zero_slot)) {}

  std::uint64_t size() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
  Complex operator[](std::uint64_t n) const { return values_[n]; }
  Complex& operator[](std::uint64_t n) { return values_[n]; }
  std::span<const Complex> raw() const noexcept { return values_; }

 private:
  std::vector<Complex> values_;
};

ValueTable sieve_values(const MultiplicativeSpec& spec, std::uint64_t n,
                        const MemoryBudget& budget = {});

// out[x] = sum_{n <= x} in[n], compensated, left to right.
ValueTable prefix_sums(const ValueTable& table);

// out[n] = sum_{d | n} a[d] b[n/d].
ValueTable dirichlet_convolve(const ValueTable& a, const ValueTable& b);

// Exact D(x) = sum_{n <= x} tau(n) by the hyperbola method, O(sqrt x).
std::uint64_t tau_summatory(double x);
std::uint64_t tau_summatory_int(std::uint64_t x);

// D(k) for k = 0..limit from a tau sieve.
std::vector<std::uint64_t> tau_prefix_table(std::uint64_t limit, const MemoryBudget& budget = {});

// Evaluates D and Delta(y) = D(y) - y log y - (2 gamma - 1) y, with an
// optional cache of D(k) for k <= cache_limit.
class DeltaEvaluator {
 public:
  DeltaEvaluator() = default;
  explicit DeltaEvaluator(std::uint64_t cache_limit, const MemoryBudget& budget = {});

  static constexpr double gamma = kEulerGamma;

  std::uint64_t cache_limit() const noexcept { return cache_.empty() ? 0 : cache_.size() - 1; }
  std::uint64_t summatory(std::uint64_t k) const {
    return k < cache_.size() ? cache_[k] : tau_summatory_int(k);
  }
  // Main term y log y + (2 gamma - 1) y.
  static double main_term(double y) noexcept {
    return y * std::log(y) + (2.0 * gamma - 1.0) * y;
  }
  // Requires y >= 1.
  double delta(double y) const;
  // Any y > 0, with D(y) = 0 for y < 1. Used where dilations x/n drop below 1.
  double delta_extended(double y) const;

 private:
  std::vector<std::uint64_t> cache_;
};

// Stateless Delta(x) for x >= 1.
double delta(double x);

}  // namespace bpslab
