#pragma once

#include <array>

namespace tausched {

/// Axis-aligned box in normalized image coordinates, corner format.
/// Invariants: all coordinates finite, inside [0, 1], and x1 < x2, y1 < y2.
struct Box {
  double x1, y1, x2, y2;

  Box(double x1, double y1, double x2, double y2);

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
};

/// Raw policy output: (center-x, center-y, log-width, log-height).
using RawBox = std::array<double, 4>;

// Minimum decoded side length. Keeps every decoded box at or above the
// 1e-4 area floor so unions can never vanish.
inline constexpr double kMinSide = 1e-2;
inline constexpr double kMinArea = kMinSide * kMinSide;

/// Intersection over union; 0 for disjoint boxes, always in [0, 1].
double iou(const Box& a, const Box& b);

/// Decodes a raw (center, log-size) vector into a valid Box: sizes are
/// exponentiated, corners truncated to [0, 1], and each side widened to
/// kMinSide when degenerate. Throws std::invalid_argument on non-finite
/// input.
Box clamp_to_unit(const RawBox& raw);

/// Inverse of the decode convention: (center-x, center-y, log-w, log-h).
RawBox encode_box(const Box& b);

}  // namespace tausched
