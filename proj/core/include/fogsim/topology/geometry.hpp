#pragma once

#include <compare>

namespace fogsim::topology {

// Meters, arena centered on the origin.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  constexpr bool operator==(const Point2D&) const = default;
};

double distance(const Point2D& a, const Point2D& b);

struct Arena {
  double diameter_m = 2000.0;

  double radius() const { return diameter_m / 2.0; }
  bool contains(const Point2D& p) const;
};

}  // namespace fogsim::topology
