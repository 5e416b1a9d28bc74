#include "bpslab/integrate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "bpslab/errors.hpp"

namespace bpslab {
namespace {

constexpr int kSeriesTerms = 48;
constexpr double kMaxRatio = 0.25;
constexpr std::uint64_t kChunks = 64;

// psi(r) = (1 + r) log(1 + r) - r = sum_{k>=2} b_k r^k, b_k = (-1)^k / (k (k-1)).
struct SeriesTables {
  std::array<double, kSeriesTerms + 1> b{};
  std::array<double, 2 * kSeriesTerms + 1> b_sq{};  // coefficients of psi^2

  SeriesTables() {
    for (int k = 2; k <= kSeriesTerms; ++k) b[k] = ((k % 2 == 0) ? 1.0 : -1.0) / (k * (k - 1.0));
    for (int i = 2; i <= kSeriesTerms; ++i)
      for (int j = 2; j <= kSeriesTerms; ++j) b_sq[i + j] += b[i] * b[j];
  }
};

const SeriesTables& tables() {
  static const SeriesTables t;
  return t;
}

// sum_k coef[k] r^(k + shift) / (k + shift), ascending until terms are negligible.
template <std::size_t N>
double integrated_series(const std::array<double, N>& coef, int first, double r, int shift) {
  double power = std::pow(r, first + shift);
  double sum = 0.0;
  for (std::size_t k = first; k < N; ++k) {
    const double term = coef[k] * power / static_cast<double>(static_cast<int>(k) + shift);
    sum += term;
    if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    power *= r;
  }
  return sum;
}

struct Term {
  std::uint64_t n;
  double coef;
  double log_n;
};

std::vector<Term> prepare(const DilatedDeltaSum& s) {
  std::vector<Term> out;
  for (const auto& [n, c] : s.terms) {
    if (n == 0) throw InputError("dilation modulus must be >= 1");
    out.push_back({n, c, std::log(static_cast<double>(n))});
  }
  return out;
}

// Local form of sum c_i Delta(x / n_i) at x = a, given D(floor(a / n_i)).
LocalForm local_form(const std::vector<Term>& terms, const std::vector<double>& d_values,
                     double a, double log_a) {
  constexpr double two_gamma = 2.0 * kEulerGamma;
  LocalForm form{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const double inv_n = 1.0 / static_cast<double>(t.n);
    const double log_ratio = log_a - t.log_n;
    const double main = a * inv_n * (log_ratio + two_gamma - 1.0);
    form.value += t.coef * (d_values[i] - main);
    form.slope += t.coef * (log_ratio + two_gamma) * inv_n;
    form.curvature_weight += t.coef * inv_n;
  }
  return form;
}

class ChunkIntegrator {
 public:
  ChunkIntegrator(const DilatedDeltaSum& f, const DilatedDeltaSum& g, const DeltaEvaluator& eval)
      : f_(prepare(f)), g_(prepare(g)), eval_(eval) {
    for (const auto& t : f_) moduli_.push_back(t.n);
    for (const auto& t : g_) moduli_.push_back(t.n);
    std::sort(moduli_.begin(), moduli_.end());
    moduli_.erase(std::unique(moduli_.begin(), moduli_.end()), moduli_.end());
  }

  // Integral over [start, end], start an integer >= 1.
  double run(std::uint64_t start, double end) const {
    CompensatedSum sum;
    std::vector<double> df(f_.size()), dg(g_.size());
    std::uint64_t a = start;
    while (static_cast<double>(a) < end) {
      std::uint64_t next = UINT64_MAX;
      for (std::uint64_t n : moduli_) next = std::min(next, (a / n + 1) * n);
      const double b = std::min(static_cast<double>(next), end);
      for (std::size_t i = 0; i < f_.size(); ++i) df[i] = d_at(a / f_[i].n);
      for (std::size_t i = 0; i < g_.size(); ++i) dg[i] = d_at(a / g_[i].n);
      integrate_piece(static_cast<double>(a), b, df, dg, sum);
      a = next;
    }
    return sum.value();
  }

 private:
  double d_at(std::uint64_t k) const { return static_cast<double>(eval_.summatory(k)); }

  // One breakpoint-free piece, subdivided geometrically so that h <= a/4.
  void integrate_piece(double a, double b, const std::vector<double>& df,
                       const std::vector<double>& dg, CompensatedSum& sum) const {
    double lo = a;
    while (lo < b) {
      const double hi = std::min(b, lo * (1.0 + kMaxRatio));
      const double log_lo = std::log(lo);
      const LocalForm lf = local_form(f_, df, lo, log_lo);
      const LocalForm lg = local_form(g_, dg, lo, log_lo);
      sum.add(integrate_local_product(lf, lg, lo, hi - lo));
      lo = hi;
    }
  }

  std::vector<Term> f_, g_;
  std::vector<std::uint64_t> moduli_;
  const DeltaEvaluator& eval_;
};

}  // namespace

double DilatedDeltaSum::evaluate(const DeltaEvaluator& eval, double x) const {
  double sum = 0.0;
  for (const auto& [n, c] : terms) sum += c * eval.delta_extended(x / static_cast<double>(n));
  return sum;
}

std::uint64_t DilatedDeltaSum::max_modulus() const noexcept {
  std::uint64_t m = 0;
  for (const auto& t : terms) m = std::max(m, t.first);
  return m;
}

double integrate_local_product(const LocalForm& f, const LocalForm& g, double a, double h) {
  const auto& tab = tables();
  const double r = h / a;
  const double a2 = a * a;
  const double a3 = a2 * a;
  // int R, int t R, int R^2 over [0, h], via t = a rho.
  const double int_r = a2 * integrated_series(tab.b, 2, r, 1);
  const double int_tr = a3 * integrated_series(tab.b, 2, r, 2);
  const double int_r2 = a3 * integrated_series(tab.b_sq, 4, r, 1);

  const double h2 = h * h;
  return f.value * g.value * h - (f.value * g.slope + g.value * f.slope) * h2 / 2.0 +
         f.slope * g.slope * h2 * h / 3.0 -
         (f.value * g.curvature_weight + g.value * f.curvature_weight) * int_r +
         (f.slope * g.curvature_weight + g.slope * f.curvature_weight) * int_tr +
         f.curvature_weight * g.curvature_weight * int_r2;
}

double integrate_product(const DilatedDeltaSum& f, const DilatedDeltaSum& g, double X,
                         const DeltaEvaluator& eval, const IntegrationOptions& opts) {
  if (!(X > 1.0) || !std::isfinite(X)) throw InputError("integration endpoint X must exceed 1");
  if (!(X < 9.0e15)) throw RangeError("integration endpoint X too large for exact breakpoints");
  if (f.terms.empty() || g.terms.empty()) return 0.0;

  const ChunkIntegrator integrator(f, g, eval);
  // Integer chunk boundaries 1 = c_0 < c_1 < ... ; the last chunk ends at X.
  const auto top = static_cast<std::uint64_t>(std::ceil(X));
  const std::uint64_t span = top - 1;
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, std::max<std::uint64_t>(span, 1));
  std::vector<std::uint64_t> bounds(chunks + 1);
  for (std::uint64_t j = 0; j <= chunks; ++j)
    bounds[j] = 1 + static_cast<std::uint64_t>((static_cast<unsigned __int128>(span) * j) / chunks);
  auto chunk_end = [&](std::uint64_t j) {
    return j + 1 == chunks ? X : static_cast<double>(bounds[j + 1]);
  };

  std::vector<double> partial(chunks, 0.0);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::uint64_t j = 0; j < chunks; ++j) partial[j] = integrator.run(bounds[j], chunk_end(j));
  } else {
    std::atomic<std::uint64_t> cursor{0};
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::uint64_t j = cursor++; j < chunks; j = cursor++)
              partial[j] = integrator.run(bounds[j], chunk_end(j));
          } catch (...) {
            failures[w] = std::current_exception();
            cursor = chunks;
          }
        });
      }
    }
    for (const auto& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }
  CompensatedSum total;
  for (double v : partial) total.add(v);
  return total.value();
}

}  // namespace bpslab
