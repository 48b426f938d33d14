#pragma once

#include "mallows/errors.hpp"

namespace mallows {

/// Axis-aligned rectangle in [0,1]^2 with per-edge closure.
///
/// The default is half-open (x1,x2] x (y1,y2], so grid cells partition (0,1]^2.
struct Rect {
  double x1 = 0.0;
  double x2 = 1.0;
  double y1 = 0.0;
  double y2 = 1.0;
  bool left_closed = false;
  bool right_closed = true;
  bool bottom_closed = false;
  bool top_closed = true;

  static Rect half_open(double x1, double x2, double y1, double y2) {
    Rect r{x1, x2, y1, y2};
    r.validate();
    return r;
  }

  static Rect closed(double x1, double x2, double y1, double y2) {
    Rect r{x1, x2, y1, y2, true, true, true, true};
    r.validate();
    return r;
  }

  static Rect unit() { return closed(0.0, 1.0, 0.0, 1.0); }

  void validate() const {
    detail::require(x1 <= x2 && y1 <= y2, "rect: need x1 <= x2 and y1 <= y2");
    detail::require(x1 >= 0.0 && x2 <= 1.0 && y1 >= 0.0 && y2 <= 1.0, "rect: must lie in [0,1]^2");
  }

  double area() const { return (x2 - x1) * (y2 - y1); }

  bool contains_x(double x) const {
    return (left_closed ? x >= x1 : x > x1) && (right_closed ? x <= x2 : x < x2);
  }
  bool contains_y(double y) const {
    return (bottom_closed ? y >= y1 : y > y1) && (top_closed ? y <= y2 : y < y2);
  }
  bool contains(double x, double y) const { return contains_x(x) && contains_y(y); }

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace mallows
