#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "schedyn/lattice.hpp"
#include "schedyn/types.hpp"

namespace schedyn {

// Symbolic pieces of the region family S:
//   Base   — the disk {|z-2| <= 1} lumped together with every vertical line
//            (one absorbing symbol: schedules send all of it to itself),
//   GDisk  — G_k: disk {|z-(4k+2)| <= 1} plus rays {Re z = 4k+2, |Im z| >= 1},
//   BDisk  — B_k: the mirror piece centred at -(4k+2),
//   LineL  — L_k: the vertical line {Re z = 4k},
//   LineM  — M_k: the vertical line {Re z = -4k}.
// G/B disks carry a linear index k >= 1; grid addressing goes through the
// array bijection in lattice.hpp.
enum class RegionKind { Base, GDisk, BDisk, LineL, LineM };

struct Region {
  RegionKind kind = RegionKind::Base;
  Index index = 0;  // linear index k >= 1; 0 for Base

  static Region base() { return {RegionKind::Base, 0}; }
  static Region g(Index k);
  static Region b(Index k);
  static Region line_l(Index k);
  static Region line_m(Index k);
  static Region g_grid(Index p, Index q);  // G at array cell (p, q)
  static Region b_grid(Index p, Index q);

  bool is_base() const { return kind == RegionKind::Base; }
  bool is_disk() const {
    return kind == RegionKind::GDisk || kind == RegionKind::BDisk;
  }
  bool is_line() const {
    return kind == RegionKind::LineL || kind == RegionKind::LineM;
  }

  // Array cell of a G/B disk; throws std::domain_error for other kinds.
  GridIndex grid() const;

  friend auto operator<=>(const Region&, const Region&) = default;
};

// "BASE", "G3", "B12", "L2", "M4".
std::string to_string(const Region& r);

// Grid-addressed rendering for disks: "G(1,2)"; other kinds as to_string.
std::string to_grid_string(const Region& r);

// Accepts both renderings ("B4", "G(0,3)", "BASE"); nullopt on junk.
std::optional<Region> parse_region(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Region& r);

}  // namespace schedyn

template <>
struct std::hash<schedyn::Region> {
  std::size_t operator()(const schedyn::Region& r) const noexcept {
    std::size_t h = static_cast<std::size_t>(r.kind);
    h = h * 1000003u ^ std::hash<schedyn::Index>{}(r.index);
    return h;
  }
};
