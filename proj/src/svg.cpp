#include "pocs/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pocs::svg {

namespace {

constexpr double kCanvas = 640.0;
constexpr char kPrototypeColor[] = "#ff0000";

// tab20 minus its reds, plus a few extra distinct hues.
constexpr std::array<const char*, 20> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8",
    "#ffbb78", "#98df8a", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5", "#393b79", "#637939",
};

std::string fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

struct Viewport {
  double min_x, min_y, span;

  double px(double x) const { return (x - min_x) / span * kCanvas; }
  double py(double y) const { return (min_y + span - y) / span * kCanvas; }
};

void open_svg(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";
}

}  // namespace

std::string label_color(std::size_t label) { return kPalette[label % kPalette.size()]; }

std::string cluster_plot(const Dataset& normalized, const std::vector<Point>& prototypes,
                         const std::vector<std::size_t>& labels) {
  if (normalized.dim() != 2) throw ContractError("plotting supports 2-D datasets only");
  if (labels.size() != normalized.size()) throw ContractError("label count differs from point count");
  const Viewport view{-0.05, -0.05, 1.1};
  std::ostringstream out;
  open_svg(out);
  out << "<g id=\"points\">\n";
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    const auto p = normalized.point(i);
    out << "<circle class=\"point\" cx=\"" << fixed(view.px(p[0])) << "\" cy=\"" << fixed(view.py(p[1]))
        << "\" r=\"2.5\" fill=\"" << label_color(labels[i]) << "\"/>\n";
  }
  out << "</g>\n<g id=\"prototypes\">\n";
  for (const Point& c : prototypes) {
    if (c.size() != 2) throw ContractError("plotting supports 2-D datasets only");
    out << "<circle class=\"prototype\" cx=\"" << fixed(view.px(c[0])) << "\" cy=\"" << fixed(view.py(c[1]))
        << "\" r=\"6\" fill=\"" << kPrototypeColor << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string pocs_scene(const std::vector<geometry::ConvexSet>& sets, const std::vector<TracePath>& paths) {
  using namespace geometry;
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](double x, double y, double r) {
    lo_x = std::min(lo_x, x - r);
    lo_y = std::min(lo_y, y - r);
    hi_x = std::max(hi_x, x + r);
    hi_y = std::max(hi_y, y + r);
  };
  for (const ConvexSet& s : sets) {
    if (dimension(s) != 2) throw ContractError("scene plots support 2-D sets only");
    if (const auto* b = std::get_if<Ball>(&s)) grow(b->center[0], b->center[1], b->radius);
    if (const auto* p = std::get_if<Singleton>(&s)) grow(p->center[0], p->center[1], 0.0);
    if (const auto* b = std::get_if<Box>(&s)) {
      grow(b->lower[0], b->lower[1], 0.0);
      grow(b->upper[0], b->upper[1], 0.0);
    }
  }
  for (const TracePath& path : paths) {
    for (const Point& p : path.points) grow(p[0], p[1], 0.0);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y) * 1.1 + 1e-9;
  const Viewport view{(lo_x + hi_x - span) / 2.0, (lo_y + hi_y - span) / 2.0, span};
  const double scale = kCanvas / span;

  std::ostringstream out;
  open_svg(out);
  for (const ConvexSet& s : sets) {
    if (const auto* b = std::get_if<Ball>(&s)) {
      out << "<circle class=\"set\" cx=\"" << fixed(view.px(b->center[0])) << "\" cy=\""
          << fixed(view.py(b->center[1])) << "\" r=\"" << fixed(b->radius * scale)
          << "\" fill=\"#dddddd\" stroke=\"#555555\"/>\n";
    } else if (const auto* p = std::get_if<Singleton>(&s)) {
      out << "<circle class=\"set\" cx=\"" << fixed(view.px(p->center[0])) << "\" cy=\""
          << fixed(view.py(p->center[1])) << "\" r=\"5\" fill=\"#555555\"/>\n";
    } else if (const auto* b = std::get_if<Box>(&s)) {
      out << "<rect class=\"set\" x=\"" << fixed(view.px(b->lower[0])) << "\" y=\"" << fixed(view.py(b->upper[1]))
          << "\" width=\"" << fixed((b->upper[0] - b->lower[0]) * scale) << "\" height=\""
          << fixed((b->upper[1] - b->lower[1]) * scale) << "\" fill=\"#dddddd\" stroke=\"#555555\"/>\n";
    }
  }
  for (const TracePath& path : paths) {
    out << "<polyline class=\"trace\" data-label=\"" << path.label << "\" fill=\"none\" stroke=\"" << path.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < path.points.size(); ++i) {
      out << (i == 0 ? "" : " ") << fixed(view.px(path.points[i][0])) << ',' << fixed(view.py(path.points[i][1]));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pocs::svg
