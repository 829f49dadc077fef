#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cli {

namespace {

constexpr double kWidth = 760.0;
constexpr double kLeft = 72.0, kRight = 24.0;
constexpr double kTop = 42.0, kBottom = 48.0;
constexpr double kPanelH = 190.0, kPanelGap = 34.0;

struct Range {
  double lo, hi;
  double span() const { return hi - lo; }
};

Range find_range(const std::vector<const std::vector<double>*>& series) {
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto* s : series)
    for (double v : *s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!(lo <= hi)) return {0.0, 1.0};
  if (lo == hi) {
    const double pad = std::max(1e-9, std::abs(lo) * 0.1 + 0.1);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0}) {
    if (raw <= mult * mag) return mult * mag;
  }
  return 10.0 * mag;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void text(std::ostream& out, double x, double y, const std::string& s,
          const char* anchor, int size) {
  out << "<text x=\"" << coord(x) << "\" y=\"" << coord(y)
      << "\" font-family=\"sans-serif\" font-size=\"" << size
      << "\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
}

}  // namespace

void write_plot(std::ostream& out, const std::string& title,
                const std::vector<double>& x, const std::string& x_label,
                const std::vector<Panel>& panels) {
  if (x.size() < 2) throw std::invalid_argument("plot needs at least 2 points");
  for (const Panel& p : panels)
    for (const Series& s : p.series)
      if (s.y.size() != x.size())
        throw std::invalid_argument("series length does not match x");

  const double height =
      kTop + panels.size() * kPanelH + (panels.size() - 1) * kPanelGap +
      kBottom;
  const double plot_w = kWidth - kLeft - kRight;
  const Range xr = find_range({&x});

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kWidth << " "
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  text(out, kWidth / 2, 24, title, "middle", 15);

  const auto map_x = [&](double v) {
    return kLeft + (v - xr.lo) / xr.span() * plot_w;
  };

  for (size_t pi = 0; pi < panels.size(); ++pi) {
    const Panel& panel = panels[pi];
    const double top = kTop + pi * (kPanelH + kPanelGap);
    const double bottom = top + kPanelH;

    std::vector<const std::vector<double>*> ys;
    for (const Series& s : panel.series) ys.push_back(&s.y);
    const Range yr = find_range(ys);
    const auto map_y = [&](double v) {
      return bottom - (v - yr.lo) / yr.span() * kPanelH;
    };

    out << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(top)
        << "\" width=\"" << coord(plot_w) << "\" height=\"" << coord(kPanelH)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const double ystep = nice_step(yr.span(), 5);
    for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi;
         v += ystep) {
      const double py = map_y(v);
      out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py)
          << "\" x2=\"" << coord(kLeft + plot_w) << "\" y2=\"" << coord(py)
          << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
      out << "<line x1=\"" << coord(kLeft - 4) << "\" y1=\"" << coord(py)
          << "\" x2=\"" << coord(kLeft) << "\" y2=\"" << coord(py)
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      text(out, kLeft - 8, py + 3.5, num(std::abs(v) < ystep * 1e-9 ? 0 : v),
           "end", 10);
    }

    const double xstep = nice_step(xr.span(), 6);
    for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi;
         v += xstep) {
      const double px = map_x(v);
      out << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(bottom)
          << "\" x2=\"" << coord(px) << "\" y2=\"" << coord(bottom + 4)
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      text(out, px, bottom + 16, num(std::abs(v) < xstep * 1e-9 ? 0 : v),
           "middle", 10);
    }

    for (const Series& s : panel.series) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.4\"";
      if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
      out << " points=\"";
      for (size_t i = 0; i < x.size(); ++i) {
        if (i) out << ' ';
        out << coord(map_x(x[i])) << ',' << coord(map_y(s.y[i]));
      }
      out << "\"/>\n";
    }

    text(out, kLeft, top - 6, panel.y_label, "start", 12);

    if (pi == 0) {
      double lx = kLeft + plot_w - 150, ly = top + 14;
      for (const Series& s : panel.series) {
        out << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly - 3)
            << "\" x2=\"" << coord(lx + 28) << "\" y2=\"" << coord(ly - 3)
            << "\" stroke=\"" << s.color << "\" stroke-width=\"1.4\"";
        if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
        out << "/>\n";
        text(out, lx + 34, ly, s.label, "start", 11);
        ly += 15;
      }
    }
  }

  text(out, kLeft + plot_w / 2, height - 14, x_label, "middle", 12);
  out << "</svg>\n";
}

}  // namespace cli
