#include "schedyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace schedyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Index centre_value(const Region& r) {
  switch (r.kind) {
    case RegionKind::Base:  return 2;
    case RegionKind::GDisk: return 4 * r.index + 2;
    case RegionKind::BDisk: return -(4 * r.index + 2);
    case RegionKind::LineL:
    case RegionKind::LineM:
      throw std::domain_error("centre: lines have no centre");
  }
  throw std::domain_error("centre: unknown region kind");
}

Complex centre(const Region& r) {
  return {static_cast<double>(centre_value(r)), 0.0};
}

bool contains(const Region& r, Complex z) {
  const double x = z.real();
  const double y = z.imag();
  switch (r.kind) {
    case RegionKind::Base: {
      if (std::abs(z - Complex(2.0, 0.0)) <= 1.0) return true;
      // every vertical line {Re z = 4m}, m != 0
      double m = x / 4.0;
      return m != 0.0 && m == std::floor(m);
    }
    case RegionKind::GDisk:
    case RegionKind::BDisk: {
      double cx = static_cast<double>(centre_value(r));
      if (std::abs(z - Complex(cx, 0.0)) <= 1.0) return true;
      return x == cx && std::abs(y) >= 1.0;
    }
    case RegionKind::LineL:
      return x == static_cast<double>(4 * r.index);
    case RegionKind::LineM:
      return x == static_cast<double>(-4 * r.index);
  }
  return false;
}

// ---------------------------------------------------------------------------
// CarlemanFamily

CarlemanFamily CarlemanFamily::standard() { return {}; }

CarlemanFamily CarlemanFamily::with_disk_radius(double r) {
  if (r <= 0) throw std::domain_error("CarlemanFamily: radius must be > 0");
  CarlemanFamily fam;
  fam.disk_radius_ = r;
  return fam;
}

CarlemanFamily CarlemanFamily::with_extra_disk(double cx, double r) {
  CarlemanFamily fam;
  fam.extra_.push_back({PieceShape::Disk, cx, 0, r, 0, "X1"});
  return fam;
}

CarlemanFamily CarlemanFamily::half_plane_fixture() {
  CarlemanFamily fam;
  fam.indexed_pieces_ = false;
  fam.half_plane_ = true;
  return fam;
}

CarlemanFamily CarlemanFamily::pocket_fixture() {
  CarlemanFamily fam;
  fam.extra_.push_back({PieceShape::Disk, 12, 0, 4.5, 0, "X1"});
  fam.extra_.push_back({PieceShape::Disk, 20, 0, 4.5, 0, "X2"});
  fam.extra_.push_back({PieceShape::Disk, 16, 8, 5.0, 0, "X3"});
  return fam;
}

std::vector<Piece> CarlemanFamily::pieces(Index max_k) const {
  if (max_k < 1) throw std::domain_error("pieces: max_k must be >= 1");
  std::vector<Piece> out;
  out.push_back({PieceShape::Disk, 2.0, 0, disk_radius_, 0, "G0"});
  if (indexed_pieces_) {
    for (Index k = 1; k <= max_k; ++k) {
      double c = static_cast<double>(4 * k + 2);
      out.push_back({PieceShape::DiskWithRays, c, 0, disk_radius_, 0,
                     "G" + std::to_string(k)});
      out.push_back({PieceShape::DiskWithRays, -c, 0, disk_radius_, 0,
                     "B" + std::to_string(k)});
      out.push_back({PieceShape::VLine, static_cast<double>(4 * k), 0, 0, 0,
                     "L" + std::to_string(k)});
      out.push_back({PieceShape::VLine, static_cast<double>(-4 * k), 0, 0, 0,
                     "M" + std::to_string(k)});
    }
  }
  if (half_plane_)
    out.push_back({PieceShape::HalfPlane, 0, 0, 0, half_plane_floor_, "H"});
  for (const Piece& p : extra_) out.push_back(p);
  return out;
}

namespace {

// Closed x-extent of a piece's footprint (half-planes span everything).
std::pair<double, double> x_extent(const Piece& p) {
  switch (p.shape) {
    case PieceShape::Disk:
    case PieceShape::DiskWithRays:
      return {p.x - p.radius, p.x + p.radius};
    case PieceShape::VLine:
      return {p.x, p.x};
    case PieceShape::HalfPlane:
      return {-kInf, kInf};
  }
  return {0, 0};
}

bool meets_window(const Piece& p, const Box& w) {
  auto [lo, hi] = x_extent(p);
  if (hi < w.xmin || lo > w.xmax) return false;
  if (p.shape == PieceShape::HalfPlane) return w.ymax >= p.floor_im;
  return true;
}

}  // namespace

std::vector<Piece> CarlemanFamily::pieces_in_window(const Box& window) const {
  double span = std::max(std::abs(window.xmin), std::abs(window.xmax));
  Index max_k = static_cast<Index>(std::ceil((span + disk_radius_) / 4.0)) + 1;
  std::vector<Piece> out;
  for (const Piece& p : pieces(std::max<Index>(max_k, 1)))
    if (meets_window(p, window)) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Exact pairwise distances

namespace {

double disk_to_disk(const Piece& a, const Piece& b) {
  return std::hypot(a.x - b.x, a.y - b.y) - a.radius - b.radius;
}

// distance from the disk of `a` to the vertical rays of `b` ({x=b.x, |y|>=1})
double disk_to_rays(const Piece& a, const Piece& b) {
  double dy = std::max(0.0, 1.0 - std::abs(a.y));
  return std::hypot(a.x - b.x, dy) - a.radius;
}

double pair_distance(const Piece& a, const Piece& b) {
  const bool a_disk =
      a.shape == PieceShape::Disk || a.shape == PieceShape::DiskWithRays;
  const bool b_disk =
      b.shape == PieceShape::Disk || b.shape == PieceShape::DiskWithRays;

  if (a_disk && b_disk) {
    double d = disk_to_disk(a, b);
    if (a.shape == PieceShape::DiskWithRays) d = std::min(d, disk_to_rays(b, a));
    if (b.shape == PieceShape::DiskWithRays) d = std::min(d, disk_to_rays(a, b));
    if (a.shape == PieceShape::DiskWithRays && b.shape == PieceShape::DiskWithRays)
      d = std::min(d, std::abs(a.x - b.x));  // ray to ray
    return d;
  }
  if (a_disk && b.shape == PieceShape::VLine)
    return std::abs(a.x - b.x) - a.radius;  // rays of `a` are never closer
  if (b_disk && a.shape == PieceShape::VLine) return pair_distance(b, a);

  if (a.shape == PieceShape::VLine && b.shape == PieceShape::VLine)
    return std::abs(a.x - b.x);

  if (a.shape == PieceShape::HalfPlane || b.shape == PieceShape::HalfPlane) {
    const Piece& h = a.shape == PieceShape::HalfPlane ? a : b;
    const Piece& o = a.shape == PieceShape::HalfPlane ? b : a;
    switch (o.shape) {
      case PieceShape::Disk:
        return h.floor_im - o.y - o.radius;
      case PieceShape::DiskWithRays:
      case PieceShape::VLine:
      case PieceShape::HalfPlane:
        return -kInf;  // unbounded vertical pieces always run into it
    }
  }
  return kInf;
}

}  // namespace

double min_separation(const CarlemanFamily& family, Index max_k) {
  auto ps = family.pieces(max_k);
  double best = kInf;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      best = std::min(best, pair_distance(ps[i], ps[j]));
  return best;
}

// ---------------------------------------------------------------------------
// Structure certificate

namespace {

struct CellGrid {
  Box window;
  double step;
  std::size_t nx = 0, ny = 0;
  std::vector<char> in_s;  // cell square intersects some piece

  double x0(std::size_t i) const { return window.xmin + step * static_cast<double>(i); }
  double y0(std::size_t j) const { return window.ymin + step * static_cast<double>(j); }
  double cx(std::size_t i) const { return x0(i) + step / 2; }
  double cy(std::size_t j) const { return y0(j) + step / 2; }
  std::size_t at(std::size_t i, std::size_t j) const { return j * nx + i; }
};

bool cell_meets_piece(double x0, double x1, double y0, double y1,
                      const Piece& p) {
  switch (p.shape) {
    case PieceShape::Disk:
    case PieceShape::DiskWithRays: {
      double dx = std::max({0.0, x0 - p.x, p.x - x1});
      double dy = std::max({0.0, y0 - p.y, p.y - y1});
      if (dx * dx + dy * dy <= p.radius * p.radius) return true;
      if (p.shape == PieceShape::DiskWithRays)
        return x0 <= p.x && p.x <= x1 && (y1 >= 1.0 || y0 <= -1.0);
      return false;
    }
    case PieceShape::VLine:
      return x0 <= p.x && p.x <= x1;
    case PieceShape::HalfPlane:
      return y1 >= p.floor_im;
  }
  return false;
}

CellGrid rasterise(const CarlemanFamily& family, const Box& window,
                   double step) {
  CellGrid grid;
  grid.window = window;
  grid.step = step;
  grid.nx = static_cast<std::size_t>(std::llround((window.xmax - window.xmin) / step));
  grid.ny = static_cast<std::size_t>(std::llround((window.ymax - window.ymin) / step));
  grid.in_s.assign(grid.nx * grid.ny, 0);

  auto pieces = family.pieces_in_window(window);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    double x0 = grid.x0(i), x1 = x0 + step;
    std::vector<const Piece*> column;  // pieces meeting this column
    for (const Piece& p : pieces) {
      auto [lo, hi] = x_extent(p);
      if (hi >= x0 && lo <= x1) column.push_back(&p);
    }
    if (column.empty()) continue;
    for (std::size_t j = 0; j < grid.ny; ++j) {
      double y0 = grid.y0(j), y1 = y0 + step;
      for (const Piece* p : column) {
        if (cell_meets_piece(x0, x1, y0, y1, *p)) {
          grid.in_s[grid.at(i, j)] = 1;
          break;
        }
      }
    }
  }
  return grid;
}

// BFS through complement cells starting from the window border; `allowed`
// filters which cells may be used at all.
template <class AllowedFn>
std::vector<char> flood_from_border(const CellGrid& g, AllowedFn&& allowed) {
  std::vector<char> seen(g.nx * g.ny, 0);
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto push = [&](std::size_t i, std::size_t j) {
    std::size_t id = g.at(i, j);
    if (!seen[id] && !g.in_s[id] && allowed(i, j)) {
      seen[id] = 1;
      queue.emplace_back(i, j);
    }
  };
  for (std::size_t i = 0; i < g.nx; ++i) {
    push(i, 0);
    push(i, g.ny - 1);
  }
  for (std::size_t j = 0; j < g.ny; ++j) {
    push(0, j);
    push(g.nx - 1, j);
  }
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    if (i > 0) push(i - 1, j);
    if (i + 1 < g.nx) push(i + 1, j);
    if (j > 0) push(i, j - 1);
    if (j + 1 < g.ny) push(i, j + 1);
  }
  return seen;
}

}  // namespace

StructureCertificate verify_structure(const CarlemanFamily& family,
                                      const Box& window, double step) {
  if (window.xmin > -20 || window.xmax < 20 || window.ymin > -20 ||
      window.ymax < 20)
    throw std::domain_error("verify_structure: window must cover [-20,20]^2");
  if (!(step > 0) || step > 0.5)
    throw std::domain_error("verify_structure: step must be in (0, 0.5]");

  StructureCertificate cert;
  cert.window = window;
  cert.grid_step = step;

  auto pieces = family.pieces_in_window(window);

  // disjointness gap, exact
  cert.min_gap = kInf;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      double d = pair_distance(pieces[i], pieces[j]);
      if (d < cert.min_gap) {
        cert.min_gap = d;
        cert.closest_pair = pieces[i].label + "/" + pieces[j].label;
      }
    }
  }
  cert.disjoint = cert.min_gap > 0;

  // (iii) bounded interiors, exact on the piece list: only disks and
  // half-planes have interior points; overlapping disks merge into one
  // component whose diameter is bounded by the span of the merged
  // bounding boxes.
  {
    bool unbounded = false;
    std::string unbounded_label;
    std::vector<std::pair<double, double>> spans;  // x-extents of disks
    double max_single = 0;
    for (const Piece& p : pieces) {
      if (p.shape == PieceShape::HalfPlane) {
        unbounded = true;
        unbounded_label = p.label;
      } else if (p.shape == PieceShape::Disk ||
                 p.shape == PieceShape::DiskWithRays) {
        spans.emplace_back(p.x - p.radius, p.x + p.radius);
        max_single = std::max(max_single, 2 * p.radius);
      }
    }
    cert.bounded_interiors.name = "bounded interiors";
    if (unbounded) {
      cert.interior_diameter_bound = kInf;
      cert.bounded_interiors.passed = false;
      cert.bounded_interiors.witness =
          "piece " + unbounded_label + " has an unbounded interior half-plane";
    } else {
      // merge x-extent intervals; open interiors join only on strict overlap
      std::sort(spans.begin(), spans.end());
      double bound = 0, lo = 0, hi = -kInf;
      for (auto [a, b] : spans) {
        if (a < hi) {
          hi = std::max(hi, b);
        } else {
          if (hi > -kInf) bound = std::max(bound, hi - lo);
          lo = a;
          hi = b;
        }
      }
      if (hi > -kInf) bound = std::max(bound, hi - lo);
      // off-axis fixture disks can make a cluster taller than wide; the
      // single-disk diameter is always a lower bound
      cert.interior_diameter_bound = std::max(bound, max_single);
      cert.bounded_interiors.passed = true;
      cert.bounded_interiors.witness =
          "every interior component has diameter <= " +
          std::to_string(cert.interior_diameter_bound);
    }
  }

  // sampled grid for the connectivity conditions
  CellGrid grid = rasterise(family, window, step);

  // (i) complement connected through infinity: every complement cell must
  // drain to the window boundary.
  {
    auto seen =
        flood_from_border(grid, [](std::size_t, std::size_t) { return true; });
    std::size_t complement = 0, reached = 0;
    std::string first_unreached;
    for (std::size_t j = 0; j < grid.ny; ++j) {
      for (std::size_t i = 0; i < grid.nx; ++i) {
        std::size_t id = grid.at(i, j);
        if (grid.in_s[id]) continue;
        ++complement;
        if (seen[id]) {
          ++reached;
        } else if (first_unreached.empty()) {
          first_unreached = "cell centred (" + std::to_string(grid.cx(i)) +
                            ", " + std::to_string(grid.cy(j)) + ")";
        }
      }
    }
    cert.complement_cell_count = complement;
    cert.unreachable_complement_cells = complement - reached;
    cert.complement_connected.name = "complement connected";
    cert.complement_connected.passed = cert.unreachable_complement_cells == 0;
    cert.complement_connected.witness =
        cert.complement_connected.passed
            ? "all " + std::to_string(complement) +
                  " complement cells reach the boundary"
            : first_unreached + " cannot reach the boundary";
  }

  // (ii) local connectivity at infinity: complement cells in each max-norm
  // band must reach the boundary without dipping more than `slack` below the
  // band's inner radius.
  {
    double half =
        std::min({-window.xmin, window.xmax, -window.ymin, window.ymax});
    double w = half / 5.0;
    double slack = 1.0 + step;
    cert.locally_connected_at_inf.name = "locally connected at infinity";
    cert.locally_connected_at_inf.passed = true;
    for (int band = 1; band <= 4; ++band) {
      double inner = w * band;
      double outer = band == 4 ? half : w * (band + 1);
      auto allowed = [&](std::size_t i, std::size_t j) {
        return std::max(std::abs(grid.cx(i)), std::abs(grid.cy(j))) >=
               inner - slack;
      };
      auto seen = flood_from_border(grid, allowed);
      RingReport ring;
      ring.inner = inner;
      ring.outer = outer;
      ring.all_reach_infinity = true;
      for (std::size_t j = 0; j < grid.ny && ring.all_reach_infinity; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
          std::size_t id = grid.at(i, j);
          if (grid.in_s[id]) continue;
          double norm = std::max(std::abs(grid.cx(i)), std::abs(grid.cy(j)));
          if (norm < inner || norm >= outer) continue;
          ++ring.complement_cells;
          if (!seen[id]) {
            ring.all_reach_infinity = false;
            cert.locally_connected_at_inf.passed = false;
            cert.locally_connected_at_inf.witness =
                "band [" + std::to_string(inner) + ", " +
                std::to_string(outer) + ") holds a cell centred (" +
                std::to_string(grid.cx(i)) + ", " + std::to_string(grid.cy(j)) +
                ") that cannot stay outward";
            break;
          }
        }
      }
      cert.rings.push_back(ring);
    }
    if (cert.locally_connected_at_inf.passed)
      cert.locally_connected_at_inf.witness =
          "all bands drain outward within slack " + std::to_string(slack);
  }

  cert.passed = cert.disjoint && cert.complement_connected.passed &&
                cert.locally_connected_at_inf.passed &&
                cert.bounded_interiors.passed;
  return cert;
}

}  // namespace schedyn
