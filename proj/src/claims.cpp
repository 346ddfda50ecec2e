#include "schedyn/claims.hpp"

#include <map>
#include <stdexcept>

namespace schedyn {

namespace {

constexpr std::optional<OrbitKind> P{OrbitKind::Periodic};
constexpr std::optional<OrbitKind> PP{OrbitKind::Preperiodic};
constexpr std::optional<OrbitKind> W{OrbitKind::Wandering};
constexpr std::optional<OrbitKind> none{std::nullopt};

SlotPattern exact(Index v) {
  return SlotPattern{SlotPattern::Kind::Exact, v, ""};
}
SlotPattern guard(std::string var, Index bound) {
  return SlotPattern{SlotPattern::Kind::Guard, bound, std::move(var)};
}
SlotPattern free_slot(std::string var) {
  return SlotPattern{SlotPattern::Kind::Free, 0, std::move(var)};
}

// Linear rows
ClaimRow at(Family fam, Index k, std::optional<OrbitKind> f,
            std::optional<OrbitKind> g, std::optional<OrbitKind> gf,
            std::optional<OrbitKind> fg) {
  return ClaimRow{Pattern{fam, {exact(k)}}, f, g, gf, fg};
}
ClaimRow from(Family fam, Index bound, std::optional<OrbitKind> f,
              std::optional<OrbitKind> g, std::optional<OrbitKind> gf,
              std::optional<OrbitKind> fg) {
  return ClaimRow{Pattern{fam, {guard("k", bound)}}, f, g, gf, fg};
}
// Grid row 0: every column of a family's first row
ClaimRow row0(Family fam, std::optional<OrbitKind> f,
              std::optional<OrbitKind> g, std::optional<OrbitKind> gf,
              std::optional<OrbitKind> fg) {
  return ClaimRow{Pattern{fam, {exact(0), free_slot("q")}}, f, g, gf, fg};
}

std::map<std::string, ClaimTable, std::less<>> build_tables() {
  std::map<std::string, ClaimTable, std::less<>> t;

  t["2.1"] = ClaimTable{"2.1", Mode::Grid, {row0(Family::G, W, W, P, none)}};

  t["2.2"] = ClaimTable{"2.2", Mode::Grid, {row0(Family::G, W, W, W, W)}};

  t["2.3"] = ClaimTable{"2.3", Mode::Grid, {row0(Family::G, P, P, W, W)}};

  t["2.4"] = ClaimTable{"2.4", Mode::Grid, {row0(Family::G, P, P, P, W)}};

  t["2.5"] = ClaimTable{"2.5",
                        Mode::Linear,
                        {
                            at(Family::G, 1, P, W, PP, P),
                            at(Family::G, 2, P, W, W, P),
                            at(Family::B, 1, P, W, P, PP),
                            at(Family::B, 2, P, W, P, W),
                            from(Family::G, 3, W, W, W, W),
                            from(Family::B, 3, W, W, W, W),
                        }};

  t["2.7"] = ClaimTable{"2.7",
                        Mode::Linear,
                        {
                            at(Family::G, 1, P, W, W, W),
                            at(Family::B, 1, P, W, W, W),
                            at(Family::B, 2, P, W, W, W),
                            from(Family::G, 2, W, W, W, W),
                            from(Family::B, 3, W, W, W, W),
                        }};

  t["2.9"] = ClaimTable{"2.9",
                        Mode::Linear,
                        {
                            at(Family::G, 1, P, W, P, P),
                            at(Family::B, 1, P, W, P, P),
                            at(Family::B, 2, PP, W, PP, P),
                            from(Family::B, 3, PP, W, P, P),
                            from(Family::G, 2, W, W, W, W),
                        }};

  t["2.11"] = ClaimTable{"2.11",
                         Mode::Linear,
                         {
                             at(Family::G, 1, P, W, PP, W),
                             at(Family::B, 1, P, W, W, P),
                             at(Family::B, 2, PP, W, P, PP),
                             at(Family::B, 3, PP, W, W, P),
                             at(Family::B, 4, PP, W, P, W),
                             from(Family::G, 2, W, W, W, W),
                             from(Family::B, 5, W, W, W, W),
                         }};

  t["2.13"] = ClaimTable{"2.13",
                         Mode::Linear,
                         {
                             from(Family::G, 1, PP, PP, PP, PP),
                             at(Family::B, 1, P, P, P, P),
                             at(Family::B, 2, P, P, P, P),
                             from(Family::B, 3, PP, PP, PP, PP),
                         }};

  t["2.15"] = ClaimTable{"2.15",
                         Mode::Linear,
                         {
                             at(Family::G, 1, PP, PP, PP, W),
                             at(Family::B, 1, P, W, W, P),
                             at(Family::G, 2, P, W, P, W),
                             at(Family::B, 2, W, P, P, W),
                             at(Family::B, 3, W, P, W, P),
                             from(Family::G, 3, W, W, W, W),
                             from(Family::B, 4, W, W, W, W),
                         }};

  return t;
}

const std::map<std::string, ClaimTable, std::less<>>& tables() {
  static const auto t = build_tables();
  return t;
}

}  // namespace

const ClaimTable& claim_table(std::string_view id_or_alias) {
  std::string id(id_or_alias);
  if (auto resolved = resolve_alias(id_or_alias)) id = *resolved;
  auto it = tables().find(id);
  if (it == tables().end())
    throw std::out_of_range("no claim table for '" + std::string(id_or_alias) +
                            "'");
  return it->second;
}

std::string claim_pattern_label(const Pattern& pattern, Mode mode) {
  if (pattern.family == Family::Base) return "BASE";
  if (mode == Mode::Grid) {
    std::string out = to_string(pattern.family) + "(";
    for (std::size_t i = 0; i < pattern.slots.size(); ++i) {
      if (i) out += ",";
      out += pattern.slots[i].render();
    }
    return out + ")";
  }
  const SlotPattern& slot = pattern.slots.at(0);
  if (slot.kind == SlotPattern::Kind::Exact)
    return to_string(pattern.family) + std::to_string(slot.value);
  return pattern.render();  // "B[k>=3]"
}

ClaimReport verify_claims(std::string_view id_or_alias) {
  return verify_claims(id_or_alias,
                       default_probe(claim_table(id_or_alias).mode));
}

ClaimReport verify_claims(std::string_view id_or_alias,
                          const std::vector<Region>& probe) {
  const ClaimTable& table = claim_table(id_or_alias);
  const BuiltinPair& pair = builtin(table.id);
  const ComposedMap gf = compose(*pair.f, *pair.g);  // g∘f
  const ComposedMap fg = compose(*pair.g, *pair.f);  // f∘g

  ClaimReport report;
  report.id = table.id;

  struct MapEntry {
    const ScheduleMap* map;
    const char* label;
    std::optional<OrbitKind> ClaimRow::* claim;
  };
  const MapEntry maps[] = {
      {pair.f, "f", &ClaimRow::under_f},
      {pair.g, "g", &ClaimRow::under_g},
      {&gf, "gf", &ClaimRow::under_gf},
      {&fg, "fg", &ClaimRow::under_fg},
  };

  for (const ClaimRow& row : table.rows) {
    for (const MapEntry& entry : maps) {
      const std::optional<OrbitKind>& expected = row.*(entry.claim);
      if (!expected) continue;
      ClaimAssertion assertion;
      assertion.pattern = claim_pattern_label(row.pattern, table.mode);
      assertion.map_name = entry.label;
      assertion.expected = *expected;
      for (const Region& region : probe) {
        if (region.is_base() || region.is_line()) continue;
        if (!row.pattern.matches(family_of(region),
                                 region_slots(region, table.mode)))
          continue;
        ++assertion.instances;
        ++report.checks;
        const OrbitKind actual = classify(*entry.map, region).kind;
        if (actual != *expected)
          assertion.failures.push_back(ClaimFailure{region, actual});
      }
      if (assertion.instances == 0)
        throw std::logic_error("claim " + assertion.pattern + " under " +
                               assertion.map_name + " of table " + table.id +
                               " matches no probe region");
      report.assertions.push_back(std::move(assertion));
    }
  }
  return report;
}

}  // namespace schedyn
