#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schedyn/region.hpp"
#include "schedyn/schedule.hpp"
#include "schedyn/types.hpp"

namespace schedyn {

enum class OrbitKind { Periodic, Preperiodic, Wandering };

std::string to_string(OrbitKind k);  // "periodic", ...
const char* short_code(OrbitKind k); // "P", "PP", "W"

// One step of the guard cycle a wandering orbit locks into.
struct CycleStep {
  std::vector<std::string> rules;  // rendered rules fired during the step
  std::vector<Index> shift;        // slot displacement of the step
};

// Finite evidence that an orbit wanders: past `transient` — which ends above
// every constant the spec mentions — the orbit repeats a run of guard-only
// rules whose lap displaces every slot by >= 0 and the total by net_shift
// > 0. Guard rules keep matching under nonnegative translation, so each lap
// replays shifted: the orbit walks through infinitely many distinct regions.
// replay_certificate() mechanically confirms any number of laps.
struct EscapeCertificate {
  std::vector<Region> transient;       // orbit prefix before the first lap
  std::vector<CycleStep> guard_cycle;  // one entry per step of the lap
  Index net_shift = 0;                 // per-lap total index displacement
};

struct OrbitClass {
  OrbitKind kind = OrbitKind::Periodic;
  Index period = 0;  // Periodic and Preperiodic
  Index tail = 0;    // Preperiodic: steps before the orbit enters its cycle
  std::optional<EscapeCertificate> certificate;  // Wandering only

  std::string describe() const;  // "periodic (period 4)", ...
};

// The orbit prefix start, m(start), ..., m^steps(start) — steps+1 entries.
std::vector<Region> orbit(const ScheduleMap& map, const Region& start,
                          Index steps);

// Classify the forward orbit of `start` under `map`:
//  - Periodic:    the orbit returns to `start` (period = first return time),
//  - Preperiodic: the orbit enters a cycle that misses `start`,
//  - Wandering:   certified by an EscapeCertificate.
// `start` must be BASE or a disk (lines are not in any schedule's domain).
// Throws std::runtime_error if no certificate or revisit appears within an
// internal step bound — a backstop no validated spec reaches.
OrbitClass classify(const ScheduleMap& map, const Region& start);

// Walk `laps` laps of the certificate's guard cycle from the end of its
// transient, checking fired rules and slot shifts match the certificate and
// that the lap displacement equals net_shift. False on any mismatch.
bool replay_certificate(const ScheduleMap& map, const Region& start,
                        const EscapeCertificate& cert, Index laps);

struct TableRow {
  Region region;
  OrbitClass under_f, under_g, under_gf, under_fg;
};

// Classify every probe region under f, g, g∘f and f∘g.
std::vector<TableRow> classify_table(const ScheduleMap& f,
                                     const ScheduleMap& g,
                                     const std::vector<Region>& regions);

// BASE plus a band of low-index disks, the regions a table run looks at by
// default: G/B 1..40 (linear) or rows 0..8, columns 1..8 (grid).
std::vector<Region> default_probe(Mode mode);

// A region R wanders under g∘f exactly when f(R) wanders under f∘g: the
// image orbit satisfies (f∘g)^n(f(R)) = f((g∘f)^n(R)), and determinism
// carries eventual periodicity across both directions; symmetrically for
// g(R) with the composites swapped. The check reports every probe region
// violating either direction — always none for consistent classifiers; the
// template in detail:: lets tests drive the reporting path with a
// deliberately inconsistent classifier.
struct TransferViolation {
  Region region;          // R
  Region image;           // f(R) or g(R)
  OrbitKind source_kind;  // class of R under the first composite
  OrbitKind image_kind;   // class of the image under the other composite
  std::string detail;
};

std::vector<TransferViolation> wandering_transfer_check(
    const ScheduleMap& f, const ScheduleMap& g,
    const std::vector<Region>& regions);

namespace detail {

// Classifier: OrbitKind(const ScheduleMap&, const Region&).
template <typename Classifier>
std::vector<TransferViolation> transfer_check(
    const ScheduleMap& f, const ScheduleMap& g,
    const std::vector<Region>& regions, Classifier&& classify_kind) {
  std::vector<TransferViolation> out;
  const ComposedMap gf = compose(f, g);  // g∘f
  const ComposedMap fg = compose(g, f);  // f∘g

  auto check = [&](const ScheduleMap& factor, const ComposedMap& source_map,
                   const ComposedMap& image_map, const Region& r) {
    const Region image = factor.apply(r);
    const OrbitKind source_kind = classify_kind(source_map, r);
    const OrbitKind image_kind = classify_kind(image_map, image);
    if ((source_kind == OrbitKind::Wandering) !=
        (image_kind == OrbitKind::Wandering)) {
      out.push_back(TransferViolation{
          r, image, source_kind, image_kind,
          to_string(r) + " is " + to_string(source_kind) + " under " +
              source_map.name() + " but " + to_string(image) + " is " +
              to_string(image_kind) + " under " + image_map.name()});
    }
  };

  for (const Region& r : regions) {
    check(f, gf, fg, r);  // R under g∘f  vs  f(R) under f∘g
    check(g, fg, gf, r);  // R under f∘g  vs  g(R) under g∘f
  }
  return out;
}

}  // namespace detail

}  // namespace schedyn
