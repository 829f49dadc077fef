#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cli {

/// One curve: y values over the shared x grid, drawn with the given SVG
/// stroke-dasharray ("" = solid).
struct Series {
  std::string label;
  std::string dash;
  std::string color;
  std::vector<double> y;
};

struct Panel {
  std::string y_label;
  std::vector<Series> series;
};

/// Writes a self-contained SVG: the panels stacked vertically over a common
/// abscissa, each autoscaled with ticks and a frame, a legend in the first
/// panel. Every series must match x in length.
void write_plot(std::ostream& out, const std::string& title,
                const std::vector<double>& x, const std::string& x_label,
                const std::vector<Panel>& panels);

}  // namespace cli
