#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bpslab/sieve.hpp"

namespace bpslab {

// Shortest-safe round-trip form: 17 significant digits.
std::string format_double(double v);

// Comma-separated, LF-terminated.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

// Header `n,re,im`.
void write_table_csv(std::ostream& out, const ValueTable& table);
// Header `x,re,im`.
void write_partial_sums_csv(std::ostream& out, const ValueTable& sums);

// Partial sums of the parity self-convolution against the +-4 x^{1/4} envelope.
struct Figure1Row {
  std::uint64_t x;
  double partial_sum;
  double upper;
  double lower;
};
struct Figure1Data {
  std::vector<Figure1Row> rows;
  std::optional<std::uint64_t> first_violation;
};
Figure1Data figure1(std::uint64_t xmax, const MemoryBudget& budget = {});
void write_figure1_csv(std::ostream& out, const Figure1Data& data);

struct SvgSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;
};
// Self-contained SVG with one polyline per series, auto-scaled to the data.
void write_svg(std::ostream& out, const std::vector<SvgSeries>& series, const std::string& title,
               int width = 800, int height = 500);

}  // namespace bpslab
