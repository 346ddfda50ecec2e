#pragma once

#include <complex>
#include <string>
#include <vector>

#include "schedyn/region.hpp"
#include "schedyn/types.hpp"

namespace schedyn {

using Complex = std::complex<double>;

// Exact integer real-axis centre: Base -> 2, G_k -> 4k+2, B_k -> -(4k+2).
// Lines have no centre; asking for one throws std::domain_error.
Index centre_value(const Region& r);
Complex centre(const Region& r);

// Exact membership of z in the point set named by r (closed sets).
bool contains(const Region& r, Complex z);

// ---------------------------------------------------------------------------
// Concrete footprint of the family for window computations.

enum class PieceShape { Disk, DiskWithRays, VLine, HalfPlane };

struct Piece {
  PieceShape shape = PieceShape::Disk;
  double x = 0;         // disk centre abscissa, or line abscissa
  double y = 0;         // disk centre ordinate (family disks sit on the axis)
  double radius = 0;    // disks only
  double floor_im = 0;  // half-plane only: {Im z >= floor_im}
  std::string label;    // "G0", "G3", "B1", "L2", "M4", "X1", "H"
};

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool empty() const { return xmin >= xmax || ymin >= ymax; }
};

// The family S = base disk + (G_k, B_k, L_k, M_k) pieces, plus deliberately
// broken fixture variants used to show the structure checks reject them.
class CarlemanFamily {
 public:
  // Unit disks, rays, and lines exactly as the family is defined.
  static CarlemanFamily standard();
  // Same layout, different disk radius (radius 2 collapses the gaps to zero).
  static CarlemanFamily with_disk_radius(double r);
  // Standard layout plus one extra free disk (overlap fixture).
  static CarlemanFamily with_extra_disk(double cx, double r);
  // Base disk plus a single horizontal half-plane standing in for the G
  // pieces: its interior is unbounded, nothing else is disturbed.
  static CarlemanFamily half_plane_fixture();
  // Standard layout plus three mutually overlapping disks that seal off a
  // complement pocket (exercises the connectivity failure path).
  static CarlemanFamily pocket_fixture();

  double disk_radius() const { return disk_radius_; }

  // Pieces with index <= max_k (the base disk is always included), plus any
  // fixture extras. max_k >= 1.
  std::vector<Piece> pieces(Index max_k) const;

  // Pieces whose footprint meets the closed box.
  std::vector<Piece> pieces_in_window(const Box& window) const;

 private:
  double disk_radius_ = 1.0;
  bool indexed_pieces_ = true;  // G/B/L/M present at all
  bool half_plane_ = false;
  double half_plane_floor_ = 2.0;
  std::vector<Piece> extra_;
};

// Exact minimum pairwise distance between distinct pieces (negative when two
// pieces overlap). Computed from the closed-form layout, not from sampling.
double min_separation(const CarlemanFamily& family, Index max_k);

// ---------------------------------------------------------------------------
// Structure certificate: the three conditions a target set must satisfy plus
// the disjointness gap. (i)/(ii) are certified on a sampled grid; (iii) and
// min_gap are exact on the piece list.

struct ConditionReport {
  std::string name;
  bool passed = false;
  std::string witness;  // evidence or the first counterexample found
};

struct RingReport {
  double inner = 0, outer = 0;      // max-norm band
  std::size_t complement_cells = 0;
  bool all_reach_infinity = false;  // without dipping below inner - slack
};

struct StructureCertificate {
  bool passed = false;

  double min_gap = 0;
  bool disjoint = false;                     // min_gap > 0
  std::string closest_pair;                  // labels of the minimising pair

  ConditionReport complement_connected;      // (i)
  ConditionReport locally_connected_at_inf;  // (ii)
  ConditionReport bounded_interiors;         // (iii)
  double interior_diameter_bound = 0;        // +inf when some interior is unbounded
  std::vector<RingReport> rings;

  Box window{};
  double grid_step = 0;
  std::size_t complement_cell_count = 0;
  std::size_t unreachable_complement_cells = 0;
};

// pre: window covers [-20,20]^2 and 0 < step <= 0.5 (throws std::domain_error).
StructureCertificate verify_structure(const CarlemanFamily& family,
                                      const Box& window, double step);

}  // namespace schedyn
