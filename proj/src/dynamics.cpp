#include "schedyn/dynamics.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace schedyn {

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::Periodic: return "periodic";
    case OrbitKind::Preperiodic: return "preperiodic";
    case OrbitKind::Wandering: return "wandering";
  }
  return "?";
}

const char* short_code(OrbitKind k) {
  switch (k) {
    case OrbitKind::Periodic: return "P";
    case OrbitKind::Preperiodic: return "PP";
    case OrbitKind::Wandering: return "W";
  }
  return "?";
}

std::string OrbitClass::describe() const {
  std::ostringstream os;
  switch (kind) {
    case OrbitKind::Periodic:
      os << "periodic (period " << period << ")";
      break;
    case OrbitKind::Preperiodic:
      os << "preperiodic (tail " << tail << ", period " << period << ")";
      break;
    case OrbitKind::Wandering:
      os << "wandering";
      if (certificate)
        os << " (transient " << certificate->transient.size() << ", lap "
           << certificate->guard_cycle.size() << ")";
      break;
  }
  return os.str();
}

std::vector<Region> orbit(const ScheduleMap& map, const Region& start,
                          Index steps) {
  if (steps < 0) throw std::domain_error("orbit: steps must be >= 0");
  std::vector<Region> out{start};
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (Index i = 0; i < steps; ++i) out.push_back(map.apply(out.back()));
  return out;
}

namespace {

// Backstop only: every validated spec resolves an orbit in a handful of
// steps, since beyond the largest rule constant matching is uniform.
constexpr Index kStepCap = 200000;

std::vector<Index> slot_delta(const std::vector<Index>& to,
                              const std::vector<Index>& from) {
  std::vector<Index> d(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) d[i] = to[i] - from[i];
  return d;
}

}  // namespace

OrbitClass classify(const ScheduleMap& map, const Region& start) {
  family_of(start);  // rejects lines

  std::unordered_map<Region, Index> first_seen{{start, 0}};
  std::vector<Region> trail{start};
  std::vector<std::vector<const Rule*>> fired;  // fired[s]: trail[s]->trail[s+1]

  // Last position (within the current run of guard-only steps) whose step
  // fired a given rule sequence, plus the slot vector it fired from.
  struct Occurrence {
    Index position;
    std::vector<Index> slots;
  };
  std::map<std::vector<const Rule*>, Occurrence> runs;

  // Only start laps above every constant the spec mentions: there the
  // matched rules are decided by family alone, so a lap seen once replays
  // under any nonnegative index translation.
  const Index uniform_above = map.max_constant();

  Region cur = start;
  for (Index step = 1; step <= kStepCap; ++step) {
    std::vector<const Rule*> hops;
    const Region next = map.apply(cur, &hops);
    fired.push_back(hops);

    if (auto it = first_seen.find(next); it != first_seen.end()) {
      const Index entry = it->second;
      if (entry == 0) return {OrbitKind::Periodic, step, 0, std::nullopt};
      return {OrbitKind::Preperiodic, step - entry, entry, std::nullopt};
    }
    first_seen.emplace(next, step);
    trail.push_back(next);

    bool guard_only = !hops.empty();
    for (const Rule* rule : hops) guard_only = guard_only && rule->pure_guard;
    if (!guard_only) {
      // An exact match or an absolute target breaks translation invariance;
      // laps must not straddle this step.
      runs.clear();
    } else if (cur.index > uniform_above) {
      const Index position = step - 1;  // source position of this step
      std::vector<Index> slots = region_slots(cur, map.mode());
      auto [it, inserted] = runs.try_emplace(hops, Occurrence{position, slots});
      if (!inserted) {
        const std::vector<Index> delta = slot_delta(slots, it->second.slots);
        bool any_pos = false, any_neg = false;
        for (Index d : delta) {
          any_pos = any_pos || d > 0;
          any_neg = any_neg || d < 0;
        }
        if (any_pos && !any_neg) {
          // Same guard-only rule sequence fired at `from` and `position`
          // with every slot displaced >= 0: all laps onward replay shifted.
          const Index from = it->second.position;
          EscapeCertificate cert;
          cert.transient.assign(trail.begin(), trail.begin() + from);
          cert.net_shift = 0;
          for (Index d : delta) cert.net_shift += d;
          for (Index s = from; s < position; ++s) {
            CycleStep cycle_step;
            for (const Rule* rule : fired[s])
              cycle_step.rules.push_back(rule->render());
            cycle_step.shift =
                slot_delta(region_slots(trail[s + 1], map.mode()),
                           region_slots(trail[s], map.mode()));
            cert.guard_cycle.push_back(std::move(cycle_step));
          }
          return {OrbitKind::Wandering, 0, 0, std::move(cert)};
        }
        // Downward or mixed drift: inconclusive; measure from here on.
        it->second = Occurrence{position, std::move(slots)};
      }
    }
    cur = next;
  }
  throw std::runtime_error("classify: no classification after " +
                           std::to_string(kStepCap) + " steps of " +
                           map.name() + " from " + to_string(start));
}

bool replay_certificate(const ScheduleMap& map, const Region& start,
                        const EscapeCertificate& cert, Index laps) {
  if (laps < 0 || cert.guard_cycle.empty()) return false;

  Region cur = start;
  for (const Region& expected : cert.transient) {
    if (cur != expected) return false;
    cur = map.apply(cur);
  }

  std::vector<Index> lap_start = region_slots(cur, map.mode());
  for (Index lap = 0; lap < laps; ++lap) {
    for (const CycleStep& cycle_step : cert.guard_cycle) {
      std::vector<const Rule*> hops;
      const std::vector<Index> before = region_slots(cur, map.mode());
      cur = map.apply(cur, &hops);
      if (hops.size() != cycle_step.rules.size()) return false;
      for (std::size_t i = 0; i < hops.size(); ++i)
        if (hops[i]->render() != cycle_step.rules[i]) return false;
      const std::vector<Index> shift =
          slot_delta(region_slots(cur, map.mode()), before);
      if (shift != cycle_step.shift) return false;
    }
    const std::vector<Index> now = region_slots(cur, map.mode());
    Index lap_total = 0;
    for (Index d : slot_delta(now, lap_start)) {
      if (d < 0) return false;
      lap_total += d;
    }
    if (lap_total != cert.net_shift || lap_total <= 0) return false;
    lap_start = now;
  }
  return true;
}

std::vector<TableRow> classify_table(const ScheduleMap& f,
                                     const ScheduleMap& g,
                                     const std::vector<Region>& regions) {
  const ComposedMap gf = compose(f, g);  // g∘f
  const ComposedMap fg = compose(g, f);  // f∘g
  std::vector<TableRow> rows;
  rows.reserve(regions.size());
  for (const Region& r : regions)
    rows.push_back(TableRow{r, classify(f, r), classify(g, r), classify(gf, r),
                            classify(fg, r)});
  return rows;
}

std::vector<Region> default_probe(Mode mode) {
  std::vector<Region> out{Region::base()};
  if (mode == Mode::Linear) {
    for (Index k = 1; k <= 40; ++k) {
      out.push_back(Region::g(k));
      out.push_back(Region::b(k));
    }
  } else {
    for (Index p = 0; p <= 8; ++p)
      for (Index q = 1; q <= 8; ++q) {
        out.push_back(Region::g_grid(p, q));
        out.push_back(Region::b_grid(p, q));
      }
  }
  return out;
}

std::vector<TransferViolation> wandering_transfer_check(
    const ScheduleMap& f, const ScheduleMap& g,
    const std::vector<Region>& regions) {
  return detail::transfer_check(
      f, g, regions, [](const ScheduleMap& m, const Region& r) {
        return classify(m, r).kind;
      });
}

}  // namespace schedyn
