#include "bpslab/sieve.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "bpslab/arith.hpp"
#include "bpslab/errors.hpp"

namespace bpslab {

MemoryBudget MemoryBudget::from_gib(double gib) {
  if (!(gib > 0.0) || !std::isfinite(gib)) throw InputError("memory budget must be positive");
  return MemoryBudget(static_cast<std::uint64_t>(gib * static_cast<double>(1ULL << 30)));
}

MemoryBudget MemoryBudget::from_env() {
  if (const char* env = std::getenv("BPSLAB_MEM_GIB")) {
    char* end = nullptr;
    const double gib = std::strtod(env, &end);
    if (end != env && *end == '\0' && gib > 0.0 && std::isfinite(gib)) return from_gib(gib);
  }
  return {};
}

void MemoryBudget::require(std::uint64_t needed, const char* what) const {
  if (needed > bytes_)
    throw ResourceError(std::string(what) + " needs " + std::to_string(needed) +
                        " bytes, budget is " + std::to_string(bytes_));
}

std::uint64_t MemoryBudget::size_of(std::uint64_t count, std::uint64_t elem) noexcept {
  std::uint64_t out = 0;
  return checked_mul(count, elem, out) ? out : std::numeric_limits<std::uint64_t>::max();
}

ValueTable sieve_values(const MultiplicativeSpec& spec, std::uint64_t n, const MemoryBudget& budget) {
  if (n == 0) throw InputError("sieve_values: N must be >= 1");
  budget.require(MemoryBudget::size_of(n + 1, sizeof(Complex) + sizeof(std::uint32_t)),
                 "sieve_values");
  ValueTable table(n);
  table[1] = 1.0;
  if (spec.exceptional().empty()) {
    for (std::uint64_t k = 2; k <= n; ++k) table[k] = 1.0;
    return table;
  }
  const SpfSieve spf(n);
  for (std::uint64_t k = 2; k <= n; ++k) {
    const std::uint64_t p = spf.smallest_factor(k);
    std::uint64_t rest = k / p;
    int e = 1;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    table[k] = spec.local_value(p, e) * table[rest];
  }
  return table;
}

ValueTable prefix_sums(const ValueTable& table) {
  ValueTable out(table.size());
  CompensatedComplexSum running;
  for (std::uint64_t x = 1; x <= table.size(); ++x) {
    running.add(table[x]);
    out[x] = running.value();
  }
  return out;
}

ValueTable dirichlet_convolve(const ValueTable& a, const ValueTable& b) {
  if (a.size() != b.size())
    throw InputError("dirichlet_convolve: tables have different lengths " +
                     std::to_string(a.size()) + " and " + std::to_string(b.size()));
  const std::uint64_t n = a.size();
  ValueTable out(n);
  for (std::uint64_t d = 1; d <= n; ++d) {
    const Complex ad = a[d];
    if (ad == 0.0) continue;
    for (std::uint64_t k = 1, dk = d; dk <= n; ++k, dk += d) out[dk] += ad * b[k];
  }
  return out;
}

std::uint64_t tau_summatory_int(std::uint64_t x) {
  if (x == 0) return 0;
  const std::uint64_t r = isqrt(x);
  unsigned __int128 sum = 0;
  for (std::uint64_t k = 1; k <= r; ++k) sum += x / k;
  const unsigned __int128 total = 2 * sum - static_cast<unsigned __int128>(r) * r;
  if (total > std::numeric_limits<std::uint64_t>::max())
    throw RangeError("D(" + std::to_string(x) + ") overflows 64 bits");
  return static_cast<std::uint64_t>(total);
}

std::uint64_t tau_summatory(double x) {
  if (!(x >= 0.0)) throw InputError("tau_summatory: x must be >= 0");
  if (!(x < 18446744073709551616.0)) throw RangeError("tau_summatory: floor(x) exceeds 64 bits");
  return tau_summatory_int(static_cast<std::uint64_t>(x));
}

std::vector<std::uint64_t> tau_prefix_table(std::uint64_t limit, const MemoryBudget& budget) {
  budget.require(MemoryBudget::size_of(limit + 1, sizeof(std::uint64_t) + 2 * sizeof(std::uint32_t)),
                 "tau_prefix_table");
  const auto tau = tau_table(limit);
  std::vector<std::uint64_t> prefix(limit + 1, 0);
  for (std::uint64_t k = 1; k <= limit; ++k) prefix[k] = prefix[k - 1] + tau[k];
  return prefix;
}

DeltaEvaluator::DeltaEvaluator(std::uint64_t cache_limit, const MemoryBudget& budget)
    : cache_(tau_prefix_table(cache_limit, budget)) {}

double DeltaEvaluator::delta(double y) const {
  if (!(y >= 1.0)) throw InputError("delta: x must be >= 1");
  return delta_extended(y);
}

double DeltaEvaluator::delta_extended(double y) const {
  const double d = y < 1.0 ? 0.0 : static_cast<double>(summatory(static_cast<std::uint64_t>(y)));
  return d - main_term(y);
}

double delta(double x) {
  if (!(x >= 1.0)) throw InputError("delta: x must be >= 1");
  return static_cast<double>(tau_summatory(x)) - DeltaEvaluator::main_term(x);
}

}  // namespace bpslab
