// emit.hpp — CSV / SVG emission helpers

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xcmm {

/// Shortest lossless decimal form of a double (round-trips exactly).
std::string format_double(double v);

struct CsvColumn {
  std::string name;
  std::vector<double> values;
};

struct CsvTable {
  std::vector<std::string> comments;  // emitted as leading "# ..." lines
  std::vector<CsvColumn> columns;     // equal lengths
};

void write_csv(std::ostream& os, const CsvTable& table);

struct SvgSeries {
  std::string label;
  std::vector<double> y;
};

/// Minimal static line plot: axes, ticks, labels, one polyline per series.
std::string render_line_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<double>& x,
                            const std::vector<SvgSeries>& series);

/// Minimal heat map for 2-D sweeps (row-major values, rows = y axis).
std::string render_heatmap_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label, const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& values);

}  // namespace xcmm
