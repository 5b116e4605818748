#ifndef POCS_SVG_HPP
#define POCS_SVG_HPP

#include <string>
#include <vector>

#include "pocs/geometry.hpp"
#include "pocs/types.hpp"

namespace pocs::svg {

/// Scatter of 2-D points in [0,1]^2 (5% margin), one fill per label from a
/// fixed palette without red, prototypes as red markers on top. Every point
/// is one `<circle class="point">`, every prototype one
/// `<circle class="prototype">`. Throws ContractError unless dim == 2.
std::string cluster_plot(const Dataset& normalized, const std::vector<Point>& prototypes,
                         const std::vector<std::size_t>& labels);

/// Palette color for a cluster label; cycles.
std::string label_color(std::size_t label);

struct TracePath {
  std::vector<Point> points;
  std::string color;
  std::string label;
};

/// 2-D sets with iterate paths drawn over them, bounds fitted to everything.
std::string pocs_scene(const std::vector<geometry::ConvexSet>& sets, const std::vector<TracePath>& paths);

}  // namespace pocs::svg

#endif  // POCS_SVG_HPP
