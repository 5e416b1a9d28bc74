#include "bpslab/arith.hpp"

#include <utility>

namespace bpslab {
namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are sufficient for every n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

SpfSieve::SpfSieve(std::uint64_t limit) : spf_(limit + 1, 0) {
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

std::vector<PrimePower> factorize(std::uint64_t n, const SpfSieve* sieve) {
  std::vector<PrimePower> out;
  if (sieve != nullptr && n <= sieve->limit()) {
    while (n > 1) {
      const std::uint64_t p = sieve->smallest_factor(n);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    return out;
  }
  auto strip = [&](std::uint64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t euler_phi(const std::vector<PrimePower>& factors) noexcept {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : factors) {
    phi *= p - 1;
    for (int k = 1; k < e; ++k) phi *= p;
  }
  return phi;
}

std::vector<std::uint32_t> tau_table(std::uint64_t limit) {
  // tau is multiplicative; track the exponent of the smallest prime to
  // update tau(i*p) from tau(i) in O(1).
  std::vector<std::uint32_t> tau(limit + 1, 0);
  if (limit == 0) return tau;
  std::vector<std::uint8_t> low_exp(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(limit + 1, false);
  tau[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      tau[i] = 2;
      low_exp[i] = 1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > limit) break;
      composite[ip] = true;
      if (i % p == 0) {
        low_exp[ip] = static_cast<std::uint8_t>(low_exp[i] + 1);
        tau[ip] = tau[i] / (low_exp[i] + 1) * (low_exp[ip] + 1);
        break;
      }
      low_exp[ip] = 1;
      tau[ip] = tau[i] * 2;
    }
  }
  return tau;
}

}  // namespace bpslab
