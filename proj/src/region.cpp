#include "schedyn/region.hpp"

#include <cctype>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace schedyn {
namespace {

Region make_indexed(RegionKind kind, Index k) {
  if (k < 1) throw std::domain_error("Region: index must be >= 1");
  return {kind, k};
}

}  // namespace

Region Region::g(Index k) { return make_indexed(RegionKind::GDisk, k); }
Region Region::b(Index k) { return make_indexed(RegionKind::BDisk, k); }
Region Region::line_l(Index k) { return make_indexed(RegionKind::LineL, k); }
Region Region::line_m(Index k) { return make_indexed(RegionKind::LineM, k); }

Region Region::g_grid(Index p, Index q) {
  return g(grid_to_linear(GridIndex(p, q)).n);
}

Region Region::b_grid(Index p, Index q) {
  return b(grid_to_linear(GridIndex(p, q)).n);
}

GridIndex Region::grid() const {
  if (!is_disk())
    throw std::domain_error("Region::grid: only G/B disks have array cells");
  return linear_to_grid(LinearIndex(index));
}

std::string to_string(const Region& r) {
  switch (r.kind) {
    case RegionKind::Base:  return "BASE";
    case RegionKind::GDisk: return "G" + std::to_string(r.index);
    case RegionKind::BDisk: return "B" + std::to_string(r.index);
    case RegionKind::LineL: return "L" + std::to_string(r.index);
    case RegionKind::LineM: return "M" + std::to_string(r.index);
  }
  return "?";
}

std::string to_grid_string(const Region& r) {
  if (!r.is_disk()) return to_string(r);
  GridIndex g = r.grid();
  std::string head = r.kind == RegionKind::GDisk ? "G" : "B";
  return head + "(" + std::to_string(g.row) + "," + std::to_string(g.col) + ")";
}

namespace {

std::optional<Index> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Index value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Region> parse_region(std::string_view text) {
  if (text == "BASE" || text == "base") return Region::base();
  if (text.size() < 2) return std::nullopt;
  const char head = text[0];
  std::string_view rest = text.substr(1);

  RegionKind kind;
  switch (head) {
    case 'G': kind = RegionKind::GDisk; break;
    case 'B': kind = RegionKind::BDisk; break;
    case 'L': kind = RegionKind::LineL; break;
    case 'M': kind = RegionKind::LineM; break;
    default: return std::nullopt;
  }

  // Grid form "G(p,q)" for disks only.
  if (rest.front() == '(') {
    if (kind != RegionKind::GDisk && kind != RegionKind::BDisk)
      return std::nullopt;
    if (rest.back() != ')') return std::nullopt;
    rest.remove_prefix(1);
    rest.remove_suffix(1);
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto p = parse_int(rest.substr(0, comma));
    auto q = parse_int(rest.substr(comma + 1));
    if (!p || !q || *p < 0 || *q < 1) return std::nullopt;
    return kind == RegionKind::GDisk ? Region::g_grid(*p, *q)
                                     : Region::b_grid(*p, *q);
  }

  auto k = parse_int(rest);
  if (!k || *k < 1) return std::nullopt;
  return Region{kind, *k};
}

std::ostream& operator<<(std::ostream& os, const Region& r) {
  return os << to_string(r);
}

}  // namespace schedyn
