#include "bpslab/spec.hpp"

#include <algorithm>
#include <cmath>

#include "bpslab/errors.hpp"

namespace bpslab {

Complex LocalPrimeData::at(int k) const noexcept {
  if (k <= 0) return 1.0;
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(k), values.size()) - 1;
  return values[idx];
}

MultiplicativeSpec::MultiplicativeSpec(std::vector<LocalPrimeData> exceptional)
    : exceptional_(std::move(exceptional)) {
  std::sort(exceptional_.begin(), exceptional_.end(),
            [](const auto& a, const auto& b) { return a.p < b.p; });
  for (std::size_t i = 0; i < exceptional_.size(); ++i) {
    const auto& local = exceptional_[i];
    if (!is_prime(local.p))
      throw InputError("exceptional p = " + std::to_string(local.p) + " is not prime");
    if (i > 0 && exceptional_[i - 1].p == local.p)
      throw InputError("prime " + std::to_string(local.p) + " listed twice");
    if (local.values.empty())
      throw InputError("prime " + std::to_string(local.p) + " has no values");
    for (const auto& v : local.values) {
      if (!is_finite(v))
        throw InputError("non-finite value at prime " + std::to_string(local.p));
    }
    for (int k = 0; k < local.stabilization_exponent(); ++k) {
      if (!checked_mul(period_, local.p, period_))
        throw RangeError("period overflows 64 bits");
    }
  }
}

const LocalPrimeData* MultiplicativeSpec::find(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(exceptional_.begin(), exceptional_.end(), p,
                             [](const auto& local, std::uint64_t q) { return local.p < q; });
  return (it != exceptional_.end() && it->p == p) ? &*it : nullptr;
}

Complex MultiplicativeSpec::local_value(std::uint64_t p, int k) const noexcept {
  const auto* local = find(p);
  return local ? local->at(k) : Complex(1.0);
}

Complex evaluate(const MultiplicativeSpec& spec, std::uint64_t n, const SpfSieve* sieve) {
  if (n == 0) throw InputError("evaluate: n must be >= 1");
  Complex result = 1.0;
  if (spec.exceptional().empty()) return result;
  // Only exceptional primes contribute; stripping them is cheaper than a
  // full factorization.
  if (sieve == nullptr) {
    for (const auto& local : spec.exceptional()) {
      int e = 0;
      while (n % local.p == 0) {
        n /= local.p;
        ++e;
      }
      if (e > 0) result *= local.at(e);
    }
    return result;
  }
  for (const auto& [p, e] : factorize(n, sieve)) result *= spec.local_value(p, e);
  return result;
}

std::uint64_t period(const MultiplicativeSpec& spec) { return spec.period(); }

Complex euler_factor(const MultiplicativeSpec& spec, std::uint64_t q) {
  if (!is_prime(q)) throw InputError("euler_factor: q = " + std::to_string(q) + " is not prime");
  const double qd = static_cast<double>(q);
  const auto* local = spec.find(q);
  if (local == nullptr) return qd / (qd - 1.0);
  const int a = local->stabilization_exponent();
  Complex sum = 1.0;
  double weight = 1.0;  // q^{-k}
  for (int k = 1; k < a; ++k) {
    weight /= qd;
    sum += local->at(k) * weight;
  }
  // sum_{k >= a} v_a q^{-k} = v_a q^{1-a} / (q - 1)
  weight /= qd;
  sum += local->at(a) * weight * (qd / (qd - 1.0));
  return sum;
}

std::optional<std::uint64_t> EulerFactorReport::vanishing_prime() const noexcept {
  for (const auto& e : entries)
    if (e.is_zero) return e.q;
  return std::nullopt;
}

EulerFactorReport check_conditions(const MultiplicativeSpec& spec, double tolerance) {
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  EulerFactorReport report;
  report.period = spec.period();
  report.tolerance = tolerance;
  for (const auto& local : spec.exceptional()) {
    const Complex factor = euler_factor(spec, local.p);
    const bool zero = std::abs(factor) <= tolerance;
    report.entries.push_back({local.p, factor, zero});
    report.condition_i_holds = report.condition_i_holds || zero;
  }
  return report;
}

Complex period_sum_formula(const MultiplicativeSpec& spec) {
  Complex product = 1.0;
  for (const auto& local : spec.exceptional()) product *= euler_factor(spec, local.p);
  std::vector<PrimePower> factors;
  for (const auto& local : spec.exceptional())
    factors.push_back({local.p, local.stabilization_exponent()});
  return static_cast<double>(euler_phi(factors)) * product;
}

PeriodSums period_sum_direct(const MultiplicativeSpec& spec) {
  CompensatedComplexSum sum;
  CompensatedSum abs_sum;
  for (std::uint64_t n = 1; n <= spec.period(); ++n) {
    const Complex v = evaluate(spec, n);
    sum.add(v);
    abs_sum.add(std::abs(v));
  }
  return {sum.value(), abs_sum.value()};
}

double pretentious_distance(const MultiplicativeSpec& f, const MultiplicativeSpec& g, double x) {
  if (!(x >= 2.0)) throw InputError("pretentious_distance: x must be >= 2");
  CompensatedSum sum;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::floor(x)))) {
    const Complex prod = f.local_value(p, 1) * std::conj(g.local_value(p, 1));
    sum.add((1.0 - prod.real()) / static_cast<double>(p));
  }
  const double total = sum.value();
  if (total < 0.0)
    throw DomainError("pretentious distance: negative sum under the square root", total);
  return std::sqrt(total);
}

}  // namespace bpslab
