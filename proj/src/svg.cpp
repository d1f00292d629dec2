#include "oncolattice/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace oncolattice {

namespace {

constexpr double W = 720, H = 480;
constexpr double ML = 80, MR = 160, MT = 40, MB = 60;

const char* const kPalette[] = {"#d62728", "#2ca02c", "#1f77b4", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void fix() {
    if (!(lo <= hi)) lo = 0, hi = 1;
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string tick(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void axes(std::ostringstream& os, const std::string& title, const std::string& xl,
          const std::string& yl, const Range& xr, const Range& yr) {
  os << "<rect x='" << ML << "' y='" << MT << "' width='" << W - ML - MR << "' height='"
     << H - MT - MB << "' fill='none' stroke='black'/>\n";
  os << "<text x='" << (ML + W - MR) / 2 << "' y='24' text-anchor='middle' font-size='16'>"
     << esc(title) << "</text>\n";
  os << "<text x='" << (ML + W - MR) / 2 << "' y='" << H - 16
     << "' text-anchor='middle' font-size='13'>" << esc(xl) << "</text>\n";
  os << "<text x='18' y='" << (MT + H - MB) / 2 << "' text-anchor='middle' font-size='13' "
     << "transform='rotate(-90 18 " << (MT + H - MB) / 2 << ")'>" << esc(yl) << "</text>\n";
  for (int k = 0; k <= 5; ++k) {
    const double fx = k / 5.0;
    const double px = ML + fx * (W - ML - MR);
    const double py = H - MB - fx * (H - MT - MB);
    os << "<line x1='" << px << "' y1='" << H - MB << "' x2='" << px << "' y2='" << H - MB + 5
       << "' stroke='black'/>\n";
    os << "<text x='" << px << "' y='" << H - MB + 18 << "' text-anchor='middle' font-size='11'>"
       << tick(xr.lo + fx * (xr.hi - xr.lo)) << "</text>\n";
    os << "<line x1='" << ML - 5 << "' y1='" << py << "' x2='" << ML << "' y2='" << py
       << "' stroke='black'/>\n";
    os << "<text x='" << ML - 8 << "' y='" << py + 4 << "' text-anchor='end' font-size='11'>"
       << tick(yr.lo + fx * (yr.hi - yr.lo)) << "</text>\n";
  }
}

}  // namespace

std::string svg_line_plot(const PlotSpec& spec) {
  Range xr, yr;
  for (const auto& s : spec.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.fix();
  yr.fix();
  auto px = [&](double x) { return ML + (x - xr.lo) / (xr.hi - xr.lo) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - yr.lo) / (yr.hi - yr.lo) * (H - MT - MB); };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  axes(os, spec.title, spec.xlabel, spec.ylabel, xr, yr);
  std::size_t colour = 0, legend_row = 0;
  for (const auto& s : spec.series) {
    const std::string col = s.color.empty() ? kPalette[colour++ % 8] : s.color;
    os << "<polyline fill='none' stroke='" << col << "' stroke-width='" << s.width << "' points='";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "'/>\n";
    if (!s.label.empty()) {
      const double ly = MT + 14 + 18.0 * static_cast<double>(legend_row++);
      os << "<line x1='" << W - MR + 10 << "' y1='" << ly - 4 << "' x2='" << W - MR + 30 << "' y2='"
         << ly - 4 << "' stroke='" << col << "' stroke-width='2'/>\n";
      os << "<text x='" << W - MR + 35 << "' y='" << ly << "' font-size='11'>" << esc(s.label)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& values) {
  Range xr, yr, vr;
  for (double v : xs) xr.add(v);
  for (double v : ys) yr.add(v);
  for (double v : values) vr.add(v);
  xr.fix();
  yr.fix();
  vr.fix();
  const double cw = (W - ML - MR) / static_cast<double>(std::max<std::size_t>(xs.size(), 1));
  const double ch = (H - MT - MB) / static_cast<double>(std::max<std::size_t>(ys.size(), 1));

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double v = values[i * xs.size() + j];
      std::string fill = "#999999";
      if (std::isfinite(v)) {
        // blue (low) to red (high)
        const double f = (v - vr.lo) / (vr.hi - vr.lo);
        const int r = static_cast<int>(255 * f), b = static_cast<int>(255 * (1 - f));
        std::ostringstream c;
        c << "rgb(" << r << ",40," << b << ")";
        fill = c.str();
      }
      os << "<rect x='" << ML + static_cast<double>(j) * cw << "' y='"
         << H - MB - static_cast<double>(i + 1) * ch << "' width='" << cw + 0.05 << "' height='"
         << ch + 0.05 << "' fill='" << fill << "'/>\n";
    }
  }
  axes(os, title, xlabel, ylabel, xr, yr);
  os << "<text x='" << W - MR + 10 << "' y='" << MT + 14 << "' font-size='11'>max " << tick(vr.hi)
     << "</text>\n";
  os << "<text x='" << W - MR + 10 << "' y='" << MT + 32 << "' font-size='11'>min " << tick(vr.lo)
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace oncolattice
