#include "tausched/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tausched {

namespace {

void require_finite_unit(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument(std::string("box coordinate ") + name +
                                " must be finite and in [0, 1], got " +
                                std::to_string(v));
  }
}

// Widens a degenerate side to kMinSide, shifting back inside [0, 1] when the
// expansion crosses a border.
void enforce_min_side(double& lo, double& hi) {
  if (hi - lo >= kMinSide) return;
  const double mid = 0.5 * (lo + hi);
  lo = mid - 0.5 * kMinSide;
  hi = mid + 0.5 * kMinSide;
  if (lo < 0.0) {
    lo = 0.0;
    hi = kMinSide;
  } else if (hi > 1.0) {
    hi = 1.0;
    lo = 1.0 - kMinSide;
  }
}

}  // namespace

Box::Box(double x1, double y1, double x2, double y2)
    : x1(x1), y1(y1), x2(x2), y2(y2) {
  require_finite_unit(x1, "x1");
  require_finite_unit(y1, "y1");
  require_finite_unit(x2, "x2");
  require_finite_unit(y2, "y2");
  if (!(x1 < x2) || !(y1 < y2)) {
    throw std::invalid_argument("box must have strictly positive area");
  }
}

double iou(const Box& a, const Box& b) {
  const double ix = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double iy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

Box clamp_to_unit(const RawBox& raw) {
  for (double v : raw) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("clamp_to_unit: non-finite raw input");
    }
  }
  const double cx = raw[0], cy = raw[1];
  const double w = std::exp(raw[2]), h = std::exp(raw[3]);

  double x1 = std::clamp(cx - 0.5 * w, 0.0, 1.0);
  double x2 = std::clamp(cx + 0.5 * w, 0.0, 1.0);
  double y1 = std::clamp(cy - 0.5 * h, 0.0, 1.0);
  double y2 = std::clamp(cy + 0.5 * h, 0.0, 1.0);
  enforce_min_side(x1, x2);
  enforce_min_side(y1, y2);
  return Box(x1, y1, x2, y2);
}

RawBox encode_box(const Box& b) {
  return {0.5 * (b.x1 + b.x2), 0.5 * (b.y1 + b.y2), std::log(b.width()),
          std::log(b.height())};
}

}  // namespace tausched
