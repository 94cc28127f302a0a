#include "fogsim/topology/geometry.hpp"

#include <cmath>

namespace fogsim::topology {

double distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool Arena::contains(const Point2D& p) const {
  // Small slack for points produced by floating-point trigonometry on the rim.
  return std::hypot(p.x, p.y) <= radius() * (1.0 + 1e-12);
}

}  // namespace fogsim::topology
