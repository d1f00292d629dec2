#ifndef ONCOLATTICE_SVG_HPP
#define ONCOLATTICE_SVG_HPP

#include <string>
#include <vector>

namespace oncolattice {

struct Series {
  std::string label;  // empty: not shown in the legend
  std::vector<double> x;
  std::vector<double> y;
  std::string color;  // empty: taken from the palette
  double width = 1.5;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
};

std::string svg_line_plot(const PlotSpec& spec);

/// values[i * xs.size() + j] is the cell at (xs[j], ys[i]). NaN cells are drawn grey.
std::string svg_heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& values);

}  // namespace oncolattice

#endif  // ONCOLATTICE_SVG_HPP
