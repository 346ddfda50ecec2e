#pragma once

#include <complex>
#include <map>

#include "schedyn/region.hpp"
#include "schedyn/types.hpp"

namespace schedyn {

class TransitionSpec;  // schedule.hpp

// Integer target value c of one interpolation constraint: the map is pinned
// to the constant c on a source piece, i.e. it behaves like e^w near
// w0 = log c. |c| >= 2 always (the base disk's own centre is 2).
struct LogTarget {
  Index c = 2;

  explicit LogTarget(Index centre);

  // log c on the principal branch: log|c| for c > 0, log|c| + i*pi for c < 0.
  std::complex<double> log_point() const;
  double magnitude() const;  // |c|
};

// Largest r such that sup_{|w - log c| <= r} |e^w - c| <= 1/2, i.e.
// ln(1 + 1/(2|c|)). Requires |c| >= 2 (throws std::domain_error).
double modulus_radius(double c_abs);

// sup_{|w - w0| <= r} |e^w - e^{w0}| = |c| (e^r - 1) for w0 = log c, r >= 0.
double sup_image_deviation(double c_abs, double r);

// Sampled maximum of |e^w - c| over `samples` equispaced points of the circle
// |w - log c| = r. Brute-force cross-check of the closed forms above.
double circle_max_deviation(const LogTarget& lt, double r, int samples);

// One schedule rule is realizable when the constant it pins (lt.c) is the
// centre of the region it claims to land in, the pinned half-disk
// {|z - c| <= 1/2} sits inside that unit disk with margin 1/2, and the
// admissible perturbation radius is positive.
struct RealizabilityReport {
  bool centre_matches = false;
  bool half_disk_contained = false;
  bool tolerance_positive = false;
  double tolerance = 0;        // modulus_radius(|c|)
  Index expected_centre = 0;   // centre of the target region
  Index scheduled_centre = 0;  // lt.c

  bool realizable() const {
    return centre_matches && half_disk_contained && tolerance_positive;
  }
};

RealizabilityReport check_rule_realizability(const Region& source,
                                             const Region& target,
                                             const LogTarget& lt);

// Per-source-region perturbation tolerance: epsilon(R) = modulus_radius of
// the constant pinned by R's rule. Regions are the spec's BASE plus every
// G/B index up to max_index (grid-mode specs address them through the array
// bijection, which is exercised here).
struct ToleranceAssignment {
  std::map<Region, double> epsilon;
  double min_epsilon = 0;
};

ToleranceAssignment derive_tolerances(const TransitionSpec& spec,
                                      Index max_index);

}  // namespace schedyn
