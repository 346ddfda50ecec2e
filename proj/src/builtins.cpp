#include <functional>
#include <map>
#include <stdexcept>

#include "schedyn/analytic.hpp"
#include "schedyn/geometry.hpp"
#include "schedyn/lattice.hpp"
#include "schedyn/schedule.hpp"

namespace schedyn {

namespace {

// Every rule in the catalog carries an independently derived target centre,
// written against the displayed form of the rule rather than computed through
// apply(). The registry cross-checks the two on startup so a typo in either
// the schedule text or this table fails fast.
using Slots = const std::vector<Index>&;
using PinFn = std::function<Index(Slots)>;

Index cell(Index p, Index q) { return grid_to_linear(GridIndex(p, q)).n; }

struct BuiltinDef {
  const char* id;
  const char* text;
  std::vector<PinFn> f_pins;
  std::vector<PinFn> g_pins;
};

const PinFn kBase = [](Slots) -> Index { return 2; };

PinFn lin(Index scale, Index shift) {
  // k |-> scale*(4k) + shift, covering +-(4(k+c)+2) via precomputed shift
  return [scale, shift](Slots s) { return scale * 4 * s[0] + shift; };
}

std::vector<BuiltinDef> catalog() {
  std::vector<BuiltinDef> defs;

  // Pair "2.1": f G-row collapses to row 0 of B, g mirrors it back one
  // column later; under g∘f the whole G row 0 is 2-periodic.
  defs.push_back(
      {"2.1",
       "mode = grid\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[p,q] -> B[0,q]\n"
       "B[p,q] -> B[p,q+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "B[p,q] -> G[0,q]\n"
       "G[p,q] -> G[p,q+1]\n",
       {kBase, [](Slots s) { return -(4 * cell(0, s[1]) + 2); },
        [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); }},
       {kBase, [](Slots s) { return 4 * cell(0, s[1]) + 2; },
        [](Slots s) { return 4 * cell(s[0], s[1] + 1) + 2; }}});

  // Pair "2.2": both factors push everything down the B column ladder, so
  // every composite wanders too.
  defs.push_back(
      {"2.2",
       "mode = grid\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[p,q] -> B[0,q]\n"
       "B[p,q] -> B[p,q+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "B[p,q] -> B[p,q+1]\n"
       "G[0,q] -> B[0,q]\n"
       "G[p>=1,q] -> G[p,q+1]\n",
       {kBase, [](Slots s) { return -(4 * cell(0, s[1]) + 2); },
        [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); }},
       {kBase, [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); },
        [](Slots s) { return -(4 * cell(0, s[1]) + 2); },
        [](Slots s) { return 4 * cell(s[0], s[1] + 1) + 2; }}});

  // Pair "2.3": each factor swaps row 0 of G and B (periodic), but the
  // composites send row 0 through ever-higher rows.
  defs.push_back(
      {"2.3",
       "mode = grid\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[0,q] -> B[0,q]\n"
       "B[0,q] -> G[0,q]\n"
       "B[p>=1,q] -> B[p,q+1]\n"
       "G[p>=1,q] -> G[p,q+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[0,q] -> B[1,q]\n"
       "B[0,q] -> B[2,q]\n"
       "B[1,q] -> G[0,q]\n"
       "B[p>=2,q] -> B[p,q+1]\n"
       "G[p>=1,q] -> G[p,q+1]\n",
       {kBase, [](Slots s) { return -(4 * cell(0, s[1]) + 2); },
        [](Slots s) { return 4 * cell(0, s[1]) + 2; },
        [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); },
        [](Slots s) { return 4 * cell(s[0], s[1] + 1) + 2; }},
       {kBase, [](Slots s) { return -(4 * cell(1, s[1]) + 2); },
        [](Slots s) { return -(4 * cell(2, s[1]) + 2); },
        [](Slots s) { return 4 * cell(0, s[1]) + 2; },
        [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); },
        [](Slots s) { return 4 * cell(s[0], s[1] + 1) + 2; }}});

  // Pair "2.4": like 2.3 but f shuffles B rows 1..3 so g∘f stays periodic
  // on G row 0 while f∘g wanders.
  defs.push_back(
      {"2.4",
       "mode = grid\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[0,q] -> B[0,q]\n"
       "B[0,q] -> G[0,q]\n"
       "B[1,q] -> B[3,q]\n"
       "B[2,q] -> B[1,q]\n"
       "B[p>=3,q] -> B[p,q+1]\n"
       "G[p>=1,q] -> G[p,q+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[0,q] -> B[1,q]\n"
       "B[0,q] -> B[2,q]\n"
       "B[1,q] -> G[0,q]\n"
       "B[p>=2,q] -> B[p,q+1]\n"
       "G[p>=1,q] -> G[p,q+1]\n",
       {kBase, [](Slots s) { return -(4 * cell(0, s[1]) + 2); },
        [](Slots s) { return 4 * cell(0, s[1]) + 2; },
        [](Slots s) { return -(4 * cell(3, s[1]) + 2); },
        [](Slots s) { return -(4 * cell(1, s[1]) + 2); },
        [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); },
        [](Slots s) { return 4 * cell(s[0], s[1] + 1) + 2; }},
       {kBase, [](Slots s) { return -(4 * cell(1, s[1]) + 2); },
        [](Slots s) { return -(4 * cell(2, s[1]) + 2); },
        [](Slots s) { return 4 * cell(0, s[1]) + 2; },
        [](Slots s) { return -(4 * cell(s[0], s[1] + 1) + 2); },
        [](Slots s) { return 4 * cell(s[0], s[1] + 1) + 2; }}});

  // Pair "2.5": f 4-cycles G1,B1,G2,B2; g drains everything into the B
  // ladder, so g∘f strands G1 in a preperiodic fall while f∘g stays on a
  // cycle.
  defs.push_back(
      {"2.5",
       "mode = linear\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> G[2]\n"
       "G[2] -> B[2]\n"
       "B[2] -> G[1]\n"
       "B[k>=3] -> B[k+1]\n"
       "G[k>=3] -> G[k+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "G[2] -> B[2]\n"
       "B[k>=1] -> B[k+1]\n"
       "G[k>=3] -> G[k+1]\n",
       {kBase, lin(0, -6), lin(0, 10), lin(0, -10), lin(0, 6), lin(-1, -6),
        lin(1, 6)},
       {kBase, lin(0, -6), lin(0, -10), lin(-1, -6), lin(1, 6)}});

  // Pair "2.7": f alone is periodic on G1,B1,B2; g and both composites
  // wander.
  defs.push_back(
      {"2.7",
       "mode = linear\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> B[2]\n"
       "B[2] -> G[1]\n"
       "B[k>=3] -> B[k+1]\n"
       "G[k>=2] -> G[k+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[k>=1] -> B[k+1]\n"
       "G[k>=2] -> G[k+1]\n",
       {kBase, lin(0, -6), lin(0, -10), lin(0, 6), lin(-1, -6), lin(1, 6)},
       {kBase, lin(0, -6), lin(-1, -6), lin(1, 6)}});

  // Pair "2.9": only g wanders; f fixes a small funnel (B[k] slides down to
  // the G1<->B1 flip).
  defs.push_back(
      {"2.9",
       "mode = linear\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> G[1]\n"
       "B[2] -> G[1]\n"
       "B[k>=3] -> B[k-1]\n"
       "G[k>=2] -> G[k+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> B[3]\n"
       "B[2] -> G[1]\n"
       "B[k>=3] -> B[k+1]\n"
       "G[k>=2] -> G[k+1]\n",
       {kBase, lin(0, -6), lin(0, 6), lin(0, 6), lin(-1, 2), lin(1, 6)},
       {kBase, lin(0, -6), lin(0, -14), lin(0, 6), lin(-1, -6), lin(1, 6)}});

  // Pair "2.11": B1..B4 host two interlocking 2/3-cycles; composites split
  // into preperiodic (g∘f) and wandering (f∘g) behaviour region by region.
  defs.push_back(
      {"2.11",
       "mode = linear\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> G[1]\n"
       "B[2] -> B[3]\n"
       "B[3] -> B[4]\n"
       "B[4] -> B[1]\n"
       "B[k>=5] -> B[k+1]\n"
       "G[k>=2] -> G[k+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "B[1] -> B[2]\n"
       "B[2] -> G[1]\n"
       "B[3] -> B[4]\n"
       "B[4] -> B[1]\n"
       "B[k>=5] -> B[k+1]\n"
       "G[k>=1] -> G[k+1]\n",
       {kBase, lin(0, -6), lin(0, 6), lin(0, -14), lin(0, -18), lin(0, -6),
        lin(-1, -6), lin(1, 6)},
       {kBase, lin(0, -10), lin(0, 6), lin(0, -18), lin(0, -6), lin(-1, -6),
        lin(1, 6)}});

  // Pair "2.13": everything funnels into the B1<->B2 flip, so all four maps
  // classify every disk as (pre)periodic.
  defs.push_back(
      {"2.13",
       "mode = linear\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[k>=1] -> B[1]\n"
       "B[1] -> B[2]\n"
       "B[k>=2] -> B[k-1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> B[2]\n"
       "B[k>=2] -> B[k-1]\n"
       "G[k>=2] -> G[k-1]\n",
       {kBase, lin(0, -6), lin(0, -10), lin(-1, 2)},
       {kBase, lin(0, -6), lin(0, -10), lin(-1, 2), lin(1, -2)}});

  // Pair "2.15": f and g each keep small cycles near the core but disagree
  // on where B2,B3 sit; only f∘g strands G1 in a wandering tail.
  defs.push_back(
      {"2.15",
       "mode = linear\n"
       "[f]\n"
       "BASE -> BASE\n"
       "G[1] -> B[1]\n"
       "B[1] -> G[2]\n"
       "G[2] -> B[1]\n"
       "B[k>=2] -> B[k+1]\n"
       "G[k>=3] -> G[k+1]\n"
       "[g]\n"
       "BASE -> BASE\n"
       "G[1] -> B[3]\n"
       "B[1] -> G[2]\n"
       "B[2] -> B[3]\n"
       "B[3] -> B[2]\n"
       "G[k>=2] -> G[k+1]\n"
       "B[k>=4] -> B[k+1]\n",
       {kBase, lin(0, -6), lin(0, 10), lin(0, -6), lin(-1, -6), lin(1, 6)},
       {kBase, lin(0, -14), lin(0, 10), lin(0, -14), lin(0, -10), lin(1, 6),
        lin(-1, -6)}});

  return defs;
}

const std::map<std::string, std::string, std::less<>>& alias_map() {
  static const std::map<std::string, std::string, std::less<>> aliases{
      {"wandering-to-periodic", "2.1"},
      {"all-wandering", "2.2"},
      {"periodic-to-wandering", "2.3"},
      {"periodic-except-fg", "2.4"},
      {"preperiodic-gf", "2.5"},
      {"periodic-f-only", "2.7"},
      {"wandering-g-only", "2.9"},
      {"preperiodic-gf-wandering-fg", "2.11"},
      {"all-preperiodic", "2.13"},
      {"preperiodic-except-fg", "2.15"},
  };
  return aliases;
}

struct BuiltinStore {
  std::vector<ScheduleFile> files;
  std::vector<BuiltinPair> pairs;
  std::map<std::string, std::size_t, std::less<>> index;
  std::map<std::string, std::vector<PinFn>, std::less<>> pins;
};

// Enumerate a handful of concrete sources matched by `rule` (the pattern's
// smallest values plus nearby offsets in every non-exact slot).
std::vector<std::vector<Index>> sample_sources(const Rule& rule, Mode mode) {
  std::vector<std::vector<Index>> out{{}};
  for (std::size_t i = 0; i < rule.lhs.slots.size(); ++i) {
    const SlotPattern& slot = rule.lhs.slots[i];
    std::vector<Index> choices;
    if (slot.kind == SlotPattern::Kind::Exact) {
      choices = {slot.value};
    } else {
      const Index lo = slot.min_value(slot_domain_min(mode, i));
      choices = {lo, lo + 1, lo + 7};
    }
    std::vector<std::vector<Index>> next;
    for (const auto& prefix : out)
      for (Index c : choices) {
        next.push_back(prefix);
        next.back().push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

void cross_check(const BuiltinDef& def, const TransitionSpec& spec,
                 const std::vector<PinFn>& pins) {
  if (pins.size() != spec.rules().size())
    throw std::logic_error("builtin " + std::string(def.id) + " [" +
                           spec.name() + "]: pinned-constant table has " +
                           std::to_string(pins.size()) + " entries for " +
                           std::to_string(spec.rules().size()) + " rules");
  for (std::size_t i = 0; i < spec.rules().size(); ++i) {
    const Rule& rule = spec.rules()[i];
    for (const std::vector<Index>& values : sample_sources(rule, spec.mode())) {
      const Region src = region_from_slots(rule.lhs.family, spec.mode(), values);
      std::vector<const Rule*> hops;
      const Region dst = spec.apply(src, &hops);
      if (hops.size() != 1 || hops[0] != &rule)
        throw std::logic_error("builtin " + std::string(def.id) + " [" +
                               spec.name() + "]: rule " + rule.render() +
                               " does not fire on its own sample " +
                               to_string(src));
      const Index pinned = pins[i](values);
      if (pinned != centre_value(dst))
        throw std::logic_error(
            "builtin " + std::string(def.id) + " [" + spec.name() +
            "]: pinned centre " + std::to_string(pinned) + " for " +
            rule.render() + " at " + to_string(src) + " but apply() lands on " +
            to_string(dst));
      if (!check_rule_realizability(src, dst, LogTarget(pinned)).realizable())
        throw std::logic_error("builtin " + std::string(def.id) + " [" +
                               spec.name() + "]: rule " + rule.render() +
                               " is not realizable at " + to_string(src));
    }
  }
}

const BuiltinStore& store() {
  static const BuiltinStore s = [] {
    BuiltinStore st;
    for (const BuiltinDef& def : catalog()) {
      st.files.push_back(parse_schedule_text(def.text));
    }
    // Fill pairs only after files stops reallocating.
    std::size_t i = 0;
    for (const BuiltinDef& def : catalog()) {
      const ScheduleFile& file = st.files[i++];
      const TransitionSpec* f = file.section("f");
      const TransitionSpec* g = file.section("g");
      if (!f || !g)
        throw std::logic_error("builtin " + std::string(def.id) +
                               ": missing [f] or [g] section");
      cross_check(def, *f, def.f_pins);
      cross_check(def, *g, def.g_pins);
      st.index.emplace(def.id, st.pairs.size());
      st.pairs.push_back(BuiltinPair{def.id, file.mode, f, g});
      st.pins.emplace(std::string(def.id) + "/f", def.f_pins);
      st.pins.emplace(std::string(def.id) + "/g", def.g_pins);
    }
    return st;
  }();
  return s;
}

}  // namespace

std::optional<std::string> resolve_alias(std::string_view alias) {
  const auto& aliases = alias_map();
  if (auto it = aliases.find(alias); it != aliases.end()) return it->second;
  return std::nullopt;
}

namespace {

std::string canonical_id(std::string_view id_or_alias) {
  if (auto id = resolve_alias(id_or_alias)) return *id;
  return std::string(id_or_alias);
}

}  // namespace

const BuiltinPair& builtin(std::string_view id_or_alias) {
  const BuiltinStore& st = store();
  const std::string id = canonical_id(id_or_alias);
  auto it = st.index.find(id);
  if (it == st.index.end()) {
    std::string known;
    for (const BuiltinPair& p : st.pairs) {
      if (!known.empty()) known += ", ";
      known += p.id;
    }
    throw std::out_of_range("unknown built-in pair '" + std::string(id_or_alias) +
                            "' (known: " + known + ")");
  }
  return st.pairs[it->second];
}

std::vector<std::string> builtin_ids() {
  std::vector<std::string> out;
  for (const BuiltinPair& p : store().pairs) out.push_back(p.id);
  return out;
}

Index builtin_pinned_constant(std::string_view id, std::string_view section,
                              std::size_t rule_index, const Region& source) {
  const BuiltinStore& st = store();
  const std::string key = canonical_id(id) + "/" + std::string(section);
  auto it = st.pins.find(key);
  if (it == st.pins.end())
    throw std::out_of_range("no pinned constants for '" + key + "'");
  const BuiltinPair& pair = builtin(id);
  if (rule_index >= it->second.size())
    throw std::out_of_range("rule index out of range for '" + key + "'");
  return it->second[rule_index](region_slots(source, pair.mode));
}

}  // namespace schedyn
