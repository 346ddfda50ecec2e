#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schedyn/dynamics.hpp"
#include "schedyn/schedule.hpp"

namespace schedyn {

// One row of a behaviour table: the regions a pattern covers and the orbit
// kind each of the four maps is claimed to give them. Absent entries are
// unclaimed (the row stays silent about that map).
struct ClaimRow {
  Pattern pattern;
  std::optional<OrbitKind> under_f, under_g, under_gf, under_fg;
};

struct ClaimTable {
  std::string id;
  Mode mode = Mode::Linear;
  std::vector<ClaimRow> rows;
};

// The behaviour table a built-in pair advertises; throws std::out_of_range
// for unknown ids (aliases accepted).
const ClaimTable& claim_table(std::string_view id_or_alias);

// Region-style label of a claim pattern: "B4", "B[k>=3]", "G(0,q)".
std::string claim_pattern_label(const Pattern& pattern, Mode mode);

struct ClaimFailure {
  Region region;
  OrbitKind actual;
};

// One (pattern, map, kind) assertion evaluated over every matching probe
// region.
struct ClaimAssertion {
  std::string pattern;   // claim_pattern_label rendering
  std::string map_name;  // "f", "g", "gf", "fg"
  OrbitKind expected;
  std::size_t instances = 0;  // matching probe regions
  std::vector<ClaimFailure> failures;

  bool passed() const { return failures.empty(); }
};

struct ClaimReport {
  std::string id;
  std::size_t checks = 0;  // total (region, map) classifications compared
  std::vector<ClaimAssertion> assertions;

  std::size_t failure_count() const {
    std::size_t n = 0;
    for (const ClaimAssertion& a : assertions) n += a.failures.size();
    return n;
  }
  bool passed() const { return failure_count() == 0; }
};

// Evaluate every assertion of the table over the probe set (default: BASE
// plus linear indices 1..40 or grid rows 0..8, columns 1..8), classifying
// each matching probe region under the four maps. Every assertion must see
// at least one instance (std::logic_error otherwise — the probe set would
// be silently skipping a claim).
ClaimReport verify_claims(std::string_view id_or_alias);
ClaimReport verify_claims(std::string_view id_or_alias,
                          const std::vector<Region>& probe);

}  // namespace schedyn
