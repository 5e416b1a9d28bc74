#include "bpslab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bpslab/convolution.hpp"
#include "bpslab/errors.hpp"
#include "bpslab/spec_io.hpp"

namespace bpslab {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void write_table_csv(std::ostream& out, const ValueTable& table) {
  write_csv_row(out, {"n", "re", "im"});
  for (std::uint64_t n = 1; n <= table.size(); ++n)
    write_csv_row(out, {std::to_string(n), format_double(table[n].real()),
                        format_double(table[n].imag())});
}

void write_partial_sums_csv(std::ostream& out, const ValueTable& sums) {
  write_csv_row(out, {"x", "re", "im"});
  for (std::uint64_t x = 1; x <= sums.size(); ++x)
    write_csv_row(out, {std::to_string(x), format_double(sums[x].real()),
                        format_double(sums[x].imag())});
}

Figure1Data figure1(std::uint64_t xmax, const MemoryBudget& budget) {
  if (xmax < 16) throw InputError("figure1: xmax must be >= 16");
  const auto parity = preset("parity");
  const ValueTable sums = convolution_partial_sums(parity, parity, xmax, budget);
  Figure1Data data;
  data.rows.reserve(xmax);
  for (std::uint64_t x = 1; x <= xmax; ++x) {
    const double env = 4.0 * std::pow(static_cast<double>(x), 0.25);
    const double s = sums[x].real();
    data.rows.push_back({x, s, env, -env});
    // The envelope increases, so checking integer x covers every real x.
    if (!data.first_violation && std::fabs(s) > env) data.first_violation = x;
  }
  return data;
}

void write_figure1_csv(std::ostream& out, const Figure1Data& data) {
  write_csv_row(out, {"x", "partial_sum", "upper", "lower"});
  for (const auto& r : data.rows)
    write_csv_row(out, {std::to_string(r.x), format_double(r.partial_sum), format_double(r.upper),
                        format_double(r.lower)});
}

void write_svg(std::ostream& out, const std::vector<SvgSeries>& series, const std::string& title,
               int width, int height) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const double margin = 40.0;
  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << title << "</text>\n";
  if (ymin < 0.0 && ymax > 0.0)
    out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax) << "\" y2=\""
        << py(0) << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\"";
    if (s.dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    char buf[64];
    for (const auto& [x, y] : s.points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      out << buf;
    }
    out << "\"><title>" << s.label << "</title></polyline>\n";
  }
  out << "</svg>\n";
}

}  // namespace bpslab
