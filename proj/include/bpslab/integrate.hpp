#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bpslab/sieve.hpp"

namespace bpslab {

// A real linear combination sum_i c_i Delta(x / n_i) of dilated error terms.
struct DilatedDeltaSum {
  std::vector<std::pair<std::uint64_t, double>> terms;  // (n_i, c_i)

  static DilatedDeltaSum single(std::uint64_t n, double c = 1.0) { return {{{n, c}}}; }
  double evaluate(const DeltaEvaluator& eval, double x) const;
  std::uint64_t max_modulus() const noexcept;
};

// Integral over [a, a+h] of (dF - sF t - wF R)(dG - sG t - wG R) dt, where
// t = x - a and R(t) = (a + t) log(1 + t/a) - t. This is the exact local form
// of a DilatedDeltaSum on an interval with no breakpoint. Requires h <= a/4.
struct LocalForm {
  double value;  // F(a)
  double slope;  // F'(a) of the smooth part
  double curvature_weight;  // coefficient of -R
};
double integrate_local_product(const LocalForm& f, const LocalForm& g, double a, double h);

struct IntegrationOptions {
  unsigned threads = 1;
};

// Exact piecewise integral over [1, X] of F(x) G(x). Breakpoints are the
// integer multiples of every modulus; each piece is integrated in closed
// form. Work is split into a fixed number of integer-aligned chunks reduced
// in index order, so the result does not depend on the thread count.
// `eval` must cache D(k) up to floor(X) for speed; uncached values fall back
// to the hyperbola method.
double integrate_product(const DilatedDeltaSum& f, const DilatedDeltaSum& g, double X,
                         const DeltaEvaluator& eval, const IntegrationOptions& opts = {});

}  // namespace bpslab
