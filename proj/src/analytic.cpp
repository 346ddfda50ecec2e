#include "schedyn/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "schedyn/geometry.hpp"
#include "schedyn/schedule.hpp"

namespace schedyn {

LogTarget::LogTarget(Index centre) : c(centre) {
  if (std::abs(centre) < 2)
    throw std::domain_error("LogTarget: |c| must be >= 2");
}

std::complex<double> LogTarget::log_point() const {
  double mag = std::log(std::abs(static_cast<double>(c)));
  return c > 0 ? std::complex<double>(mag, 0.0)
               : std::complex<double>(mag, M_PI);
}

double LogTarget::magnitude() const {
  return std::abs(static_cast<double>(c));
}

double modulus_radius(double c_abs) {
  if (!(c_abs >= 2))
    throw std::domain_error("modulus_radius: |c| must be >= 2");
  return std::log(1.0 + 1.0 / (2.0 * c_abs));
}

double sup_image_deviation(double c_abs, double r) {
  if (!(c_abs >= 2))
    throw std::domain_error("sup_image_deviation: |c| must be >= 2");
  if (r < 0) throw std::domain_error("sup_image_deviation: r must be >= 0");
  // sup over the closed disk |w - w0| <= r of |e^w - e^{w0}| is attained on
  // the real direction: |c| (e^r - 1).
  return c_abs * std::expm1(r);
}

double circle_max_deviation(const LogTarget& lt, double r, int samples) {
  if (samples < 1)
    throw std::domain_error("circle_max_deviation: need at least one sample");
  const std::complex<double> w0 = lt.log_point();
  const std::complex<double> target(static_cast<double>(lt.c), 0.0);
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    double t = 2.0 * M_PI * i / samples;
    best = std::max(best, std::abs(std::exp(w0 + std::polar(r, t)) - target));
  }
  return best;
}

RealizabilityReport check_rule_realizability(const Region& /*source*/,
                                             const Region& target,
                                             const LogTarget& lt) {
  RealizabilityReport rep;
  rep.expected_centre = centre_value(target);
  rep.scheduled_centre = lt.c;
  rep.centre_matches = rep.expected_centre == rep.scheduled_centre;
  // the pinned half-disk {|z - c| <= 1/2} must sit inside the target's unit
  // disk with margin 1/2
  rep.half_disk_contained =
      std::abs(static_cast<double>(rep.scheduled_centre - rep.expected_centre)) +
          0.5 <=
      1.0 - 0.5 + 1e-12;
  rep.tolerance = modulus_radius(lt.magnitude());
  rep.tolerance_positive = rep.tolerance > 0;
  return rep;
}

ToleranceAssignment derive_tolerances(const TransitionSpec& spec,
                                      Index max_index) {
  if (max_index < 1)
    throw std::domain_error("derive_tolerances: max_index must be >= 1");
  ToleranceAssignment out;
  out.min_epsilon = std::numeric_limits<double>::infinity();
  auto add = [&](const Region& r) {
    Region image = spec.apply(r);
    double eps = modulus_radius(
        std::abs(static_cast<double>(centre_value(image))));
    out.epsilon.emplace(r, eps);
    out.min_epsilon = std::min(out.min_epsilon, eps);
  };
  add(Region::base());
  for (Index k = 1; k <= max_index; ++k) {
    add(Region::g(k));
    add(Region::b(k));
  }
  return out;
}

}  // namespace schedyn
