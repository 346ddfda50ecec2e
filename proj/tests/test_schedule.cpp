#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "schedyn/geometry.hpp"
#include "schedyn/schedule.hpp"

using namespace schedyn;

namespace {

std::string fixture(const std::string& name) {
  const std::string path = std::string(SCHEDYN_TEST_DIR) + "/fixtures/" + name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(bool(in), "missing fixture ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("a two-section file parses into named specs") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_pair.sched"));
  CHECK(file.mode == Mode::Linear);
  REQUIRE(file.sections.size() == 2);
  REQUIRE(file.section("f") != nullptr);
  REQUIRE(file.section("g") != nullptr);
  CHECK(file.section("h") == nullptr);
  CHECK(file.section("f")->rules().size() == 3);
  CHECK(file.section("f")->name() == "f");
  CHECK(file.section("f")->max_constant() == 1);

  const TransitionSpec& g = *file.section("g");
  CHECK(g.apply(Region::base()) == Region::base());
  CHECK(g.apply(Region::g(4)) == Region::b(4));
  CHECK(g.apply(Region::b(4)) == Region::g(5));
}

TEST_CASE("a grid single-section file parses and steps through the bijection") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_single.sched"));
  CHECK(file.mode == Mode::Grid);
  REQUIRE(file.sections.size() == 1);
  const TransitionSpec& f = *file.section("f");
  CHECK(f.apply(Region::g_grid(2, 5)) == Region::g_grid(2, 4));
  CHECK(f.apply(Region::g_grid(2, 1)) == Region::base());
  CHECK(f.apply(Region::b_grid(0, 9)) == Region::base());
}

TEST_CASE("rules render back to their source text") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_pair.sched"));
  const auto& rules = file.section("g")->rules();
  REQUIRE(rules.size() == 3);
  CHECK(rules[0].render() == "BASE -> BASE");
  CHECK(rules[1].render() == "G[k>=1] -> B[k]");
  CHECK(rules[2].render() == "B[k>=1] -> G[k+1]");
  CHECK(rules[1].pure_guard);
  CHECK_FALSE(file.section("f")->rules()[0].pure_guard);  // BASE -> BASE
}

TEST_CASE("comments, blank lines and spacing are immaterial") {
  const auto file = parse_schedule_text(
      "# leading comment\n"
      "mode=linear\n"
      "\n"
      "[ f ]\n"
      "BASE->BASE   # trailing comment\n"
      "  G[ k >= 1 ]  ->  G[ k + 1 ]\n"
      "B[j>=1]->B[j+1]\n");
  CHECK(file.section("f")->rules().size() == 3);
  CHECK(file.section("f")->apply(Region::g(2)) == Region::g(3));
}

// --- diagnostics ------------------------------------------------------------

TEST_CASE("an uncovered family index is reported with the first hole") {
  try {
    parse_schedule_text(fixture("bad_gap.sched"));
    FAIL("expected a gap error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Gap);
    CHECK(e.witness() == "G[1]");
    CHECK(std::string(e.what()).find("E_GAP") != std::string::npos);
    CHECK(std::string(e.what()).find("G[1]") != std::string::npos);
  }
}

TEST_CASE("two rules matching one region are reported with that region") {
  try {
    parse_schedule_text(fixture("bad_overlap.sched"));
    FAIL("expected an overlap error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Overlap);
    CHECK(e.witness() == "G[3]");
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("lines 5 and 6") != std::string::npos);
  }
}

TEST_CASE("a target that can leave its domain is reported with an instance") {
  try {
    parse_schedule_text(fixture("bad_domain.sched"));
    FAIL("expected a domain error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Domain);
    CHECK(e.witness() == "G[1] -> G[0]");
    CHECK(e.line() == 5);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_schedule_text(fixture("bad_syntax.sched"));
    FAIL("expected a syntax error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Syntax);
    CHECK(e.line() == 5);
    CHECK(e.col() == 11);
  }
}

TEST_CASE("assorted syntax failures") {
  const char* cases[] = {
      "",                                      // no mode line
      "mode = diagonal\n",                     // unknown mode
      "mode = linear\nBASE -> BASE\n",         // rule before any section
      "mode = linear\n[f]\nG[k>=1] - G[k]\n",  // missing arrow
      "mode = linear\n[f]\nQ[k>=1] -> BASE\n",         // unknown family
      "mode = linear\n[f]\nG[k>=1, j>=1] -> BASE\n",   // arity (linear)
      "mode = grid\n[f]\nG[k>=1] -> BASE\n",           // arity (grid)
      "mode = linear\n[f]\nBASE -> BASE\n[f]\nBASE -> BASE\n",  // dup section
      "mode = linear\n[f]\nG[99999999999999999999] -> BASE\n",  // overflow
  };
  for (const char* text : cases) {
    CAPTURE(text);
    try {
      parse_schedule_text(text);
      FAIL_CHECK("expected a syntax error for: " << text);
    } catch (const SpecError& e) {
      CHECK(e.code() == SpecErrorCode::Syntax);
    }
  }
}

TEST_CASE("exact patterns below the slot domain are domain errors") {
  try {
    parse_schedule_text("mode = linear\n[f]\nBASE -> BASE\nG[0] -> BASE\n"
                        "G[k>=1] -> BASE\nB[k>=1] -> BASE\n");
    FAIL("expected a domain error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Domain);
  }
}

TEST_CASE("the analysable fragment rejects cross-slot and repeated variables") {
  // rhs variable bound by no pattern slot
  CHECK_THROWS_AS(
      parse_schedule_text("mode = linear\n[f]\nBASE -> BASE\n"
                          "G[k>=1] -> G[j+1]\nB[k>=1] -> B[k]\n"),
      SpecError);
  // grid: same variable bound twice
  try {
    parse_schedule_text("mode = grid\n[f]\nBASE -> BASE\n"
                        "G[k>=0, k>=1] -> BASE\nB[p>=0, q>=1] -> BASE\n"
                        "G[p>=0, q>=1] -> BASE\n");
    FAIL("expected an unsupported-fragment error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Unsupported);
  }
  // grid: rhs variable taken from the other slot
  try {
    parse_schedule_text("mode = grid\n[f]\nBASE -> BASE\n"
                        "G[p>=0, q>=1] -> G[q, p+1]\n"
                        "B[p>=0, q>=1] -> BASE\n");
    FAIL("expected an unsupported-fragment error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Unsupported);
  }
}

TEST_CASE("gap and overlap checks see grid corners") {
  // (0,1) uncovered for B
  try {
    parse_schedule_text("mode = grid\n[f]\nBASE -> BASE\n"
                        "G[p>=0, q>=1] -> BASE\nB[p>=1, q>=1] -> BASE\n"
                        "B[p>=0, q>=2] -> BASE\n");
    FAIL("expected a gap error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Gap);
    CHECK(e.witness() == "B[0,1]");
  }
  // overlap at (1,2)
  try {
    parse_schedule_text("mode = grid\n[f]\nBASE -> BASE\n"
                        "G[p>=0, q>=1] -> BASE\nB[p>=0, q>=1] -> BASE\n"
                        "B[p>=1, q>=2] -> G[p, q]\n");
    FAIL("expected an overlap error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Overlap);
    CHECK(e.witness() == "B[1,2]");
  }
}

TEST_CASE("missing BASE coverage is a gap with witness BASE") {
  try {
    parse_schedule_text("mode = linear\n[f]\n"
                        "G[k>=1] -> G[k+1]\nB[k>=1] -> B[k+1]\n");
    FAIL("expected a gap error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Gap);
    CHECK(e.witness() == "BASE");
  }
}

// --- application and composition ---------------------------------------------

TEST_CASE("apply reports the rule it fired") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_pair.sched"));
  std::vector<const Rule*> hops;
  const Region out = file.section("g")->apply(Region::g(7), &hops);
  CHECK(out == Region::b(7));
  REQUIRE(hops.size() == 1);
  CHECK(hops[0]->render() == "G[k>=1] -> B[k]");
}

TEST_CASE("rule_for returns the unique matching rule") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_pair.sched"));
  CHECK(file.section("f")->rule_for(Region::base()).render() == "BASE -> BASE");
  CHECK(file.section("f")->rule_for(Region::b(9)).render() ==
        "B[k>=1] -> B[k+1]");
}

TEST_CASE("composition applies left factor first") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_pair.sched"));
  const TransitionSpec& f = *file.section("f");
  const TransitionSpec& g = *file.section("g");

  const ComposedMap gf = compose(f, g);  // g∘f
  CHECK(gf.name() == "g∘f");
  CHECK(gf.apply(Region::g(1)) == Region::b(2));   // f: G1->G2, g: G2->B2
  CHECK(gf.apply(Region::b(1)) == Region::g(3));   // f: B1->B2, g: B2->G3

  const ComposedMap fg = compose(g, f);  // f∘g
  CHECK(fg.apply(Region::g(1)) == Region::b(2));   // g: G1->B1, f: B1->B2
  CHECK(fg.apply(Region::b(1)) == Region::g(3));   // g: B1->G2, f: G2->G3

  std::vector<const Rule*> hops;
  gf.apply(Region::g(1), &hops);
  REQUIRE(hops.size() == 2);
  CHECK(hops[0]->render() == "G[k>=1] -> G[k+1]");
  CHECK(hops[1]->render() == "G[k>=1] -> B[k]");

  CHECK(gf.max_constant() == 1);
  CHECK(gf.mode() == Mode::Linear);

  // compositions copy their factors
  const ComposedMap copy = gf;
  CHECK(copy.apply(Region::g(1)) == Region::b(2));
  CHECK(copy.name() == gf.name());
}

TEST_CASE("composing across modes is refused") {
  const ScheduleFile lin = parse_schedule_text(fixture("valid_pair.sched"));
  const ScheduleFile grid = parse_schedule_text(fixture("valid_single.sched"));
  try {
    compose(*lin.section("f"), *grid.section("f"));
    FAIL("expected a mode mismatch");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::ModeMismatch);
  }
}

TEST_CASE("applying a map to a line is a domain error") {
  const ScheduleFile file = parse_schedule_text(fixture("valid_pair.sched"));
  CHECK_THROWS_AS(file.section("f")->apply(Region::line_l(1)),
                  std::domain_error);
}

TEST_CASE("target index arithmetic is overflow-checked") {
  const auto file = parse_schedule_text(
      "mode = linear\n[f]\nBASE -> BASE\n"
      "G[k>=1] -> G[k+1152921504606846000]\nB[k>=1] -> B[k]\n");
  const TransitionSpec& f = *file.section("f");
  CHECK(f.apply(Region::g(1)) == Region::g(1152921504606846001LL));
  CHECK_THROWS_AS(f.apply(Region::g(9000000000000000000LL)),
                  std::overflow_error);
}

TEST_CASE("constants beyond the analysable bound are domain errors") {
  try {
    parse_schedule_text("mode = linear\n[f]\nBASE -> BASE\n"
                        "G[k>=9223372036854775807] -> BASE\n"
                        "G[k>=1] -> G[k]\nB[k>=1] -> B[k]\n");
    FAIL("expected a domain error");
  } catch (const SpecError& e) {
    CHECK(e.code() == SpecErrorCode::Domain);
  }
  CHECK_THROWS_AS(
      parse_schedule_text("mode = linear\n[f]\nBASE -> BASE\n"
                          "G[k>=1] -> G[k+9223372036854775000]\n"
                          "B[k>=1] -> B[k]\n"),
      SpecError);
}

// --- built-in catalog ---------------------------------------------------------

TEST_CASE("the catalog exposes ten pairs under ids and aliases") {
  const auto ids = builtin_ids();
  REQUIRE(ids.size() == 10);
  CHECK(ids.front() == "2.1");
  CHECK(ids.back() == "2.15");
  for (const auto& id : ids) {
    const BuiltinPair& pair = builtin(id);
    CHECK(pair.id == id);
    REQUIRE(pair.f != nullptr);
    REQUIRE(pair.g != nullptr);
    CHECK(pair.f->mode() == pair.mode);
    CHECK(pair.g->mode() == pair.mode);
  }
  CHECK(builtin("preperiodic-gf").id == "2.5");
  CHECK(resolve_alias("all-wandering") == std::string("2.2"));
  CHECK_FALSE(resolve_alias("no-such-alias").has_value());
  CHECK_THROWS_AS(builtin("3.7"), std::out_of_range);
}

TEST_CASE("every region matches exactly one rule of every built-in section") {
  for (const auto& id : builtin_ids()) {
    const BuiltinPair& pair = builtin(id);
    for (const TransitionSpec* spec : {pair.f, pair.g}) {
      std::vector<Region> probes{Region::base()};
      if (pair.mode == Mode::Linear) {
        for (Index k = 1; k <= 10000; ++k) {
          probes.push_back(Region::g(k));
          probes.push_back(Region::b(k));
        }
      } else {
        for (Index p = 0; p <= 100; ++p)
          for (Index q = 1; q <= 100; ++q) {
            probes.push_back(Region::g_grid(p, q));
            probes.push_back(Region::b_grid(p, q));
          }
      }
      for (const Region& r : probes) {
        const auto slots = region_slots(r, pair.mode);
        const Family fam = family_of(r);
        std::size_t matches = 0;
        for (const Rule& rule : spec->rules())
          if (rule.lhs.matches(fam, slots)) ++matches;
        if (matches != 1) {
          CAPTURE(id);
          CAPTURE(spec->name());
          CAPTURE(to_string(r));
          REQUIRE(matches == 1);
        }
        (void)spec->apply(r);  // must not throw
      }
    }
  }
}

TEST_CASE("pinned constants are independent of the rule targets yet agree") {
  for (const auto& id : builtin_ids()) {
    const BuiltinPair& pair = builtin(id);
    for (const TransitionSpec* spec : {pair.f, pair.g}) {
      const auto& rules = spec->rules();
      for (std::size_t i = 0; i < rules.size(); ++i) {
        // one concrete source per rule: the pattern's minimal instance
        std::vector<Index> slots;
        for (std::size_t s = 0; s < rules[i].lhs.slots.size(); ++s)
          slots.push_back(rules[i].lhs.slots[s].min_value(
              slot_domain_min(pair.mode, s)));
        const Region src =
            region_from_slots(rules[i].lhs.family, pair.mode, slots);
        const Region dst = spec->apply(src);
        CHECK(builtin_pinned_constant(id, spec->name(), i, src) ==
              centre_value(dst));
      }
    }
  }
}
