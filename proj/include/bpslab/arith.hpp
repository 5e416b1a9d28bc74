#pragma once

#include <cstdint>
#include <vector>

namespace bpslab {

struct PrimePower {
  std::uint64_t p;
  int e;
};

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

// Smallest-prime-factor table over [0, limit]; spf[0] = spf[1] = 0.
class SpfSieve {
 public:
  explicit SpfSieve(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return spf_.empty() ? 0 : spf_.size() - 1; }
  std::uint32_t smallest_factor(std::uint64_t n) const { return spf_[n]; }

 private:
  std::vector<std::uint32_t> spf_;
};

// Prime factorization in ascending prime order. Uses the sieve when n is
// inside its range, trial division otherwise. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint64_t n, const SpfSieve* sieve = nullptr);

std::uint64_t euler_phi(const std::vector<PrimePower>& factors) noexcept;

// Divisor count tau(n) for n in [0, limit], tau[0] = 0; linear sieve.
std::vector<std::uint32_t> tau_table(std::uint64_t limit);

}  // namespace bpslab
