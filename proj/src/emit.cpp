#include "xcmm/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace xcmm {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  // Shortest representation that round-trips: try increasing precision.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (const auto& c : table.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i].name;
  os << "\n";
  const std::size_t rows = table.columns.empty() ? 0 : table.columns[0].values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      os << (i ? "," : "") << format_double(table.columns[i].values[r]);
    os << "\n";
  }
}

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginLeft = 70, kMarginRight = 20, kMarginTop = 40, kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2"};

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range find_range(const std::vector<double>& v) {
  Range r{std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity()};
  for (double x : v)
    if (std::isfinite(x)) {
      r.lo = std::min(r.lo, x);
      r.hi = std::max(r.hi, x);
    }
  if (!(r.lo < r.hi)) {
    r.lo -= 0.5;
    r.hi += 0.5;
  }
  return r;
}

double px(double v, Range r, double lo_px, double hi_px) {
  return lo_px + (v - r.lo) / (r.hi - r.lo) * (hi_px - lo_px);
}

void axes(std::ostringstream& s, const std::string& title, const std::string& xl,
          const std::string& yl, Range xr, Range yr) {
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  s << "<rect width='" << kWidth << "' height='" << kHeight << "' fill='white'/>\n";
  s << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='15'>"
    << title << "</text>\n";
  s << "<line x1='" << x0 << "' y1='" << y0 << "' x2='" << x1 << "' y2='" << y0
    << "' stroke='black'/>\n";
  s << "<line x1='" << x0 << "' y1='" << y0 << "' x2='" << x0 << "' y2='" << y1
    << "' stroke='black'/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    const double xp = px(xv, xr, x0, x1);
    const double yp = px(yv, yr, y0, y1);
    s << "<line x1='" << xp << "' y1='" << y0 << "' x2='" << xp << "' y2='" << y0 + 5
      << "' stroke='black'/>\n";
    s << "<text x='" << xp << "' y='" << y0 + 20
      << "' text-anchor='middle' font-size='11'>" << format_double(xv) << "</text>\n";
    s << "<line x1='" << x0 - 5 << "' y1='" << yp << "' x2='" << x0 << "' y2='" << yp
      << "' stroke='black'/>\n";
    s << "<text x='" << x0 - 8 << "' y='" << yp + 4
      << "' text-anchor='end' font-size='11'>" << format_double(yv) << "</text>\n";
  }
  s << "<text x='" << (x0 + x1) / 2 << "' y='" << kHeight - 10
    << "' text-anchor='middle' font-size='13'>" << xl << "</text>\n";
  s << "<text x='16' y='" << (y0 + y1) / 2
    << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
    << (y0 + y1) / 2 << ")'>" << yl << "</text>\n";
}

}  // namespace

std::string render_line_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<double>& x,
                            const std::vector<SvgSeries>& series) {
  Range xr = find_range(x);
  Range yr{std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
  for (const auto& s : series) {
    const Range r = find_range(s.y);
    yr.lo = std::min(yr.lo, r.lo);
    yr.hi = std::max(yr.hi, r.hi);
  }
  if (!(yr.lo < yr.hi)) yr = {yr.lo - 0.5, yr.hi + 0.5};

  std::ostringstream s;
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
    << kHeight << "'>\n";
  axes(s, title, x_label, y_label, xr, yr);
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % std::size(kPalette)];
    bool open = false, any = false;
    for (std::size_t i = 0; i < x.size() && i < series[si].y.size(); ++i) {
      const double v = series[si].y[i];
      if (!std::isfinite(v)) {  // singular nodes break the line
        if (open) s << "'/>\n";
        open = false;
        continue;
      }
      if (!open) {
        s << "<polyline fill='none' stroke='" << color
          << "' stroke-width='1.5' points='";
        open = true;
        any = true;
      }
      s << px(x[i], xr, x0, x1) << "," << px(v, yr, y0, y1) << " ";
    }
    if (open) s << "'/>\n";
    if (any)
      s << "<text x='" << x1 - 8 << "' y='" << y1 + 16 + 16 * static_cast<int>(si)
        << "' text-anchor='end' font-size='12' fill='" << color << "'>"
        << series[si].label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_heatmap_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label, const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& values) {
  const Range xr = find_range(x), yr = find_range(y), vr = find_range(values);
  std::ostringstream s;
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
    << kHeight << "'>\n";
  axes(s, title, x_label, y_label, xr, yr);
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  const double cw = static_cast<double>(x1 - x0) / static_cast<double>(x.size());
  const double ch = static_cast<double>(y0 - y1) / static_cast<double>(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double v = values[i * y.size() + j];
      if (!std::isfinite(v)) continue;
      const double t = (v - vr.lo) / (vr.hi - vr.lo);
      const int r = static_cast<int>(255 * t);
      const int b = static_cast<int>(255 * (1.0 - t));
      s << "<rect x='" << px(x[i], xr, x0, x1) - cw / 2 << "' y='"
        << px(y[j], yr, y0, y1) - ch / 2 << "' width='" << cw + 0.5 << "' height='"
        << ch + 0.5 << "' fill='rgb(" << r << ",0," << b << ")'/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace xcmm
