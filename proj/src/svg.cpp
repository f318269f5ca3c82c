#include "chiralchain/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace chiralchain::cli {

namespace {

struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    throw std::runtime_error("csv column '" + name + "' not found");
  }
};

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvData data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (data.columns.empty()) {
      data.columns = cells;
      continue;
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const auto& c : cells) values.push_back(std::stod(c));
    data.rows.push_back(std::move(values));
  }
  if (data.columns.empty()) throw std::runtime_error("empty csv " + path.string());
  return data;
}

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string svg_header() {
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n";
  return out.str();
}

struct AxisRange {
  double lo = 0, hi = 1;
  bool log = false;

  double fraction(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return (x - a) / std::max(b - a, 1e-300);
  }
};

std::vector<double> ticks(const AxisRange& r) {
  std::vector<double> out;
  if (r.log) {
    const int lo = static_cast<int>(std::floor(std::log10(r.lo)));
    const int hi = static_cast<int>(std::ceil(std::log10(r.hi)));
    for (int e = lo; e <= hi; ++e) {
      const double v = std::pow(10.0, e);
      if (v >= r.lo * 0.999 && v <= r.hi * 1.001) out.push_back(v);
    }
    return out;
  }
  const double span = r.hi - r.lo;
  const double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  double tick = std::ceil(r.lo / step) * step;
  const double scaled = span / step;
  const double stride = scaled > 20 ? 5 : (scaled > 10 ? 2 : 1);
  tick = std::ceil(r.lo / (step * stride)) * step * stride;
  while (tick <= r.hi + 1e-12 * span) {
    out.push_back(tick);
    tick += step * stride;
  }
  return out;
}

std::string format_tick(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

void draw_axes(std::ostringstream& out, const AxisRange& xr, const AxisRange& yr,
               const std::string& xlabel) {
  out << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << kWidth - kLeft - kRight
      << "' height='" << kHeight - kTop - kBottom
      << "' fill='none' stroke='black' stroke-width='1'/>\n";
  for (double v : ticks(xr)) {
    const double x = kLeft + xr.fraction(v) * (kWidth - kLeft - kRight);
    out << "<line x1='" << x << "' y1='" << kHeight - kBottom << "' x2='" << x << "' y2='"
        << kHeight - kBottom + 5 << "' stroke='black'/>\n";
    out << "<text x='" << x << "' y='" << kHeight - kBottom + 18
        << "' font-size='11' text-anchor='middle'>" << format_tick(v) << "</text>\n";
  }
  for (double v : ticks(yr)) {
    const double y = kHeight - kBottom - yr.fraction(v) * (kHeight - kTop - kBottom);
    out << "<line x1='" << kLeft - 5 << "' y1='" << y << "' x2='" << kLeft << "' y2='" << y
        << "' stroke='black'/>\n";
    out << "<text x='" << kLeft - 8 << "' y='" << y + 4
        << "' font-size='11' text-anchor='end'>" << format_tick(v) << "</text>\n";
  }
  out << "<text x='" << (kLeft + kWidth - kRight) / 2 << "' y='" << kHeight - 12
      << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n";
}

}  // namespace

void svg_line_plot(const std::filesystem::path& csv, const std::filesystem::path& svg,
                   const std::vector<std::string>& y_columns, bool log_x, bool log_y) {
  const CsvData data = read_csv(csv);
  if (data.rows.empty()) throw std::runtime_error("no rows to plot");
  std::vector<int> ycols;
  for (const auto& name : y_columns) ycols.push_back(data.column(name));

  AxisRange xr, yr;
  xr.log = log_x;
  yr.log = log_y;
  xr.lo = xr.hi = data.rows.front()[0];
  bool have_y = false;
  for (const auto& row : data.rows) {
    if (log_x && row[0] <= 0) continue;
    xr.lo = std::min(xr.lo, row[0]);
    xr.hi = std::max(xr.hi, row[0]);
    for (int c : ycols) {
      const double v = log_y ? std::abs(row[c]) : row[c];
      if (log_y && v <= 1e-300) continue;
      if (!have_y) {
        yr.lo = yr.hi = v;
        have_y = true;
      }
      yr.lo = std::min(yr.lo, v);
      yr.hi = std::max(yr.hi, v);
    }
  }
  if (!have_y) throw std::runtime_error("no plottable values");
  if (!yr.log) {
    const double pad = 0.05 * std::max(yr.hi - yr.lo, 1e-12);
    yr.lo -= pad;
    yr.hi += pad;
  }
  if (xr.log && xr.lo <= 0) xr.lo = 1e-300;

  std::ostringstream out;
  out << svg_header();
  draw_axes(out, xr, yr, data.columns[0]);
  for (std::size_t s = 0; s < ycols.size(); ++s) {
    out << "<polyline fill='none' stroke='" << kPalette[s % 6]
        << "' stroke-width='1.5' points='";
    for (const auto& row : data.rows) {
      const double v = yr.log ? std::abs(row[ycols[s]]) : row[ycols[s]];
      if ((xr.log && row[0] <= 0) || (yr.log && v <= 1e-300)) continue;
      const double x = kLeft + xr.fraction(row[0]) * (kWidth - kLeft - kRight);
      const double y = kHeight - kBottom - yr.fraction(v) * (kHeight - kTop - kBottom);
      out << x << "," << y << " ";
    }
    out << "'/>\n";
    out << "<text x='" << kWidth - kRight - 8 << "' y='" << kTop + 16 + 16 * s
        << "' font-size='12' text-anchor='end' fill='" << kPalette[s % 6] << "'>"
        << data.columns[ycols[s]] << "</text>\n";
  }
  out << "</svg>\n";
  std::ofstream file(svg);
  file << out.str();
}

void svg_heatmap(const std::filesystem::path& csv, const std::filesystem::path& svg,
                 const std::string& z_column) {
  const CsvData data = read_csv(csv);
  const int zc = data.column(z_column);
  if (data.columns.size() < 3) throw std::runtime_error("heatmap needs two axis columns");

  std::vector<double> xs, ys;
  for (const auto& row : data.rows) {
    if (std::find(xs.begin(), xs.end(), row[0]) == xs.end()) xs.push_back(row[0]);
    if (std::find(ys.begin(), ys.end(), row[1]) == ys.end()) ys.push_back(row[1]);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double zlo = data.rows.front()[zc], zhi = zlo;
  for (const auto& row : data.rows) {
    zlo = std::min(zlo, row[zc]);
    zhi = std::max(zhi, row[zc]);
  }

  auto cell_index = [](const std::vector<double>& grid, double v) {
    return std::find_if(grid.begin(), grid.end(),
                        [v](double g) { return std::abs(g - v) < 1e-12; }) -
           grid.begin();
  };

  std::ostringstream out;
  out << svg_header();
  const double cw = (kWidth - kLeft - kRight) / xs.size();
  const double ch = (kHeight - kTop - kBottom) / ys.size();
  for (const auto& row : data.rows) {
    const auto i = cell_index(xs, row[0]);
    const auto j = cell_index(ys, row[1]);
    const double f = (zhi > zlo) ? (row[zc] - zlo) / (zhi - zlo) : 0.0;
    const int red = static_cast<int>(255 * f);
    const int blue = static_cast<int>(255 * (1.0 - f));
    out << "<rect x='" << kLeft + i * cw << "' y='" << kHeight - kBottom - (j + 1) * ch
        << "' width='" << cw + 0.5 << "' height='" << ch + 0.5 << "' fill='rgb(" << red << ",80,"
        << blue << ")'/>\n";
  }
  AxisRange xr{xs.front(), xs.back(), false}, yr{ys.front(), ys.back(), false};
  draw_axes(out, xr, yr, data.columns[0] + " (color: " + z_column + ")");
  out << "</svg>\n";
  std::ofstream file(svg);
  file << out.str();
}

}  // namespace chiralchain::cli
