#pragma once

// Sampling oracle for pairwise piece distances: walks a dense set of points
// on piece A and measures the exact point-to-set distance to piece B. The
// sampled minimum upper-bounds the true distance and converges to it as the
// sampling gets denser, which is enough to corroborate the closed-form
// min_separation without sharing any code with it.

#include <algorithm>
#include <cmath>
#include <vector>

#include "schedyn/geometry.hpp"

namespace schedyn::testing {

inline double point_to_piece(double px, double py, const Piece& b) {
  switch (b.shape) {
    case PieceShape::Disk:
      return std::hypot(px - b.x, py - b.y) - b.radius;
    case PieceShape::DiskWithRays: {
      double disk = std::hypot(px - b.x, py - b.y) - b.radius;
      double ray = std::hypot(px - b.x, std::max(0.0, 1.0 - std::abs(py)));
      return std::min(disk, ray);
    }
    case PieceShape::VLine:
      return std::abs(px - b.x);
    case PieceShape::HalfPlane:
      return b.floor_im - py;  // negative once inside
  }
  return 0;
}

// Points on the boundary of piece a, dense enough for 1e-3 accuracy within
// |y| <= y_extent.
inline std::vector<std::pair<double, double>> sample_piece(const Piece& a,
                                                           double y_extent) {
  std::vector<std::pair<double, double>> pts;
  const int kCircle = 4096;
  const int kLinear = 4096;
  switch (a.shape) {
    case PieceShape::Disk:
    case PieceShape::DiskWithRays:
      for (int i = 0; i < kCircle; ++i) {
        double t = 2.0 * M_PI * i / kCircle;
        pts.emplace_back(a.x + a.radius * std::cos(t),
                         a.y + a.radius * std::sin(t));
      }
      if (a.shape == PieceShape::DiskWithRays) {
        for (int i = 0; i <= kLinear; ++i) {
          double y = 1.0 + (y_extent - 1.0) * i / kLinear;
          pts.emplace_back(a.x, y);
          pts.emplace_back(a.x, -y);
        }
      }
      break;
    case PieceShape::VLine:
      for (int i = 0; i <= kLinear; ++i) {
        double y = -y_extent + 2.0 * y_extent * i / kLinear;
        pts.emplace_back(a.x, y);
      }
      break;
    case PieceShape::HalfPlane:
      for (int i = 0; i <= kLinear; ++i) {
        double x = a.x - y_extent + 2.0 * y_extent * i / kLinear;
        pts.emplace_back(x, a.floor_im);
      }
      break;
  }
  return pts;
}

inline double sampled_pair_distance(const Piece& a, const Piece& b,
                                    double y_extent = 64.0) {
  double best = std::numeric_limits<double>::infinity();
  for (auto [px, py] : sample_piece(a, y_extent))
    best = std::min(best, point_to_piece(px, py, b));
  return best;
}

inline double sampled_min_separation(const std::vector<Piece>& pieces) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = 0; j < pieces.size(); ++j)
      if (i != j)
        best = std::min(best, sampled_pair_distance(pieces[i], pieces[j]));
  return best;
}

}  // namespace schedyn::testing
