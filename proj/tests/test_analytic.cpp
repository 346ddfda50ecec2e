#include "schedyn/analytic.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "oracle_analytic.hpp"
#include "schedyn/schedule.hpp"

using schedyn::Index;
using schedyn::LogTarget;
using schedyn::Region;

TEST_CASE("oracle: crossing radius for c = 2 and c = 10 (frozen values)") {
  // 10^5 circle samples, bisected to 1e-9: these frozen values came from the
  // oracle itself and pin the closed form ln(1 + 1/(2|c|)).
  double r2 = schedyn::testing::crossing_radius(2, 100000);
  CHECK(r2 == doctest::Approx(0.22314355131420976).epsilon(1e-7));
  double r10 = schedyn::testing::crossing_radius(-10, 100000);
  CHECK(r10 == doctest::Approx(0.04879016416943205).epsilon(1e-7));
}

TEST_CASE("modulus_radius matches the oracle crossing within 1e-6") {
  for (Index c : {2, 6, 10, 14, 26, -6, -18, -50}) {
    double closed = schedyn::modulus_radius(std::abs(static_cast<double>(c)));
    double sampled = schedyn::testing::crossing_radius(c, 100000);
    CAPTURE(c);
    CHECK(std::abs(closed - sampled) < 1e-6);
  }
}

TEST_CASE("modulus_radius frozen values and domain") {
  CHECK(schedyn::modulus_radius(2) == doctest::Approx(0.22314355131420976).epsilon(1e-15));
  CHECK(schedyn::modulus_radius(10) == doctest::Approx(0.04879016416943205).epsilon(1e-15));
  CHECK(schedyn::modulus_radius(2) == doctest::Approx(std::log(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(schedyn::modulus_radius(1.5), std::domain_error);
  CHECK_THROWS_AS(schedyn::modulus_radius(0), std::domain_error);
}

TEST_CASE("modulus_radius shrinks as the magnitude grows") {
  double prev = schedyn::modulus_radius(2);
  for (double c = 6; c <= 402; c += 4) {
    double cur = schedyn::modulus_radius(c);
    CHECK(cur < prev);
    CHECK(cur > 0);
    prev = cur;
  }
}

TEST_CASE("sup_image_deviation equals 1/2 exactly at the modulus radius") {
  for (double c : {2.0, 6.0, 10.0, 26.0, 102.0, 402.0}) {
    double r = schedyn::modulus_radius(c);
    CHECK(std::abs(schedyn::sup_image_deviation(c, r) - 0.5) < 1e-12);
    // tightness: half the radius stays well inside
    CHECK(schedyn::sup_image_deviation(c, r / 2) < 0.5);
    // and anything beyond the radius exceeds 1/2
    CHECK(schedyn::sup_image_deviation(c, r * 1.0000001) > 0.5);
  }
}

TEST_CASE("sampled deviation never exceeds the closed-form sup") {
  for (Index c : {2, -6, 10, -14}) {
    for (double r : {0.01, 0.05, 0.2}) {
      double samp = schedyn::testing::sampled_max_deviation(c, r, 20000);
      double form =
          schedyn::sup_image_deviation(std::abs(static_cast<double>(c)), r);
      CAPTURE(c);
      CAPTURE(r);
      CHECK(samp <= form + 1e-9);
      CHECK(samp >= form - 1e-4);  // the max sits at a sampled angle
    }
  }
}

TEST_CASE("circle_max_deviation mirrors the oracle") {
  LogTarget lt(-10);
  double ours = schedyn::circle_max_deviation(lt, 0.04, 4096);
  double oracle = schedyn::testing::sampled_max_deviation(-10, 0.04, 4096);
  CHECK(ours == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("log targets pick the branch that reproduces c") {
  LogTarget pos(2);
  CHECK(pos.log_point() == std::complex<double>(std::log(2.0), 0.0));
  CHECK(std::abs(std::exp(pos.log_point()) - 2.0) < 1e-14);

  LogTarget neg(-10);
  CHECK(neg.log_point().real() == doctest::Approx(std::log(10.0)));
  CHECK(neg.log_point().imag() == doctest::Approx(M_PI));
  CHECK(std::abs(std::exp(neg.log_point()) - std::complex<double>(-10, 0)) <
        1e-13);

  CHECK_THROWS_AS(LogTarget(1), std::domain_error);
  CHECK_THROWS_AS(LogTarget(0), std::domain_error);
  CHECK_THROWS_AS(LogTarget(-1), std::domain_error);
}

TEST_CASE("realizability: consistent rule constants pass") {
  // column-reset rule: source G(p,q), target the B disk with linear index
  // q(q-1)/2 + 1, pinned constant -(4(q(q-1)/2+1)+2)
  for (Index q : {1, 2, 3, 8}) {
    Index n = q * (q - 1) / 2 + 1;
    Region source = Region::g_grid(0, q);
    Region target = Region::b(n);
    LogTarget lt(-(4 * n + 2));
    auto rep = schedyn::check_rule_realizability(source, target, lt);
    CAPTURE(q);
    CHECK(rep.realizable());
    CHECK(rep.centre_matches);
    CHECK(rep.half_disk_contained);
    CHECK(rep.tolerance > 0);
    if (q == 2) CHECK(rep.scheduled_centre == -10);
    if (q == 3) CHECK(rep.scheduled_centre == -18);
  }
}

TEST_CASE("realizability: sign mismatch is flagged") {
  // pinned constant says -10 but the claimed landing region is G2 (centre +10)
  auto rep = schedyn::check_rule_realizability(Region::b(1), Region::g(2),
                                               LogTarget(-10));
  CHECK_FALSE(rep.realizable());
  CHECK_FALSE(rep.centre_matches);
  CHECK_FALSE(rep.half_disk_contained);
  CHECK(rep.expected_centre == 10);
  CHECK(rep.scheduled_centre == -10);
}

TEST_CASE("realizability: base sink pins the constant 2") {
  auto rep = schedyn::check_rule_realizability(Region::base(), Region::base(),
                                               LogTarget(2));
  CHECK(rep.realizable());
  CHECK(rep.tolerance == doctest::Approx(std::log(1.25)).epsilon(1e-15));
}

TEST_CASE("derived tolerances follow each rule's pinned constant") {
  const auto& pair25 = schedyn::builtin("2.5");
  auto tol = schedyn::derive_tolerances(*pair25.f, 12);
  // base sink: constant 2 -> ln(5/4)
  CHECK(tol.epsilon.at(Region::base()) ==
        doctest::Approx(std::log(1.25)).epsilon(1e-15));
  // B1 -> G2 pins +10 -> ln(21/20)
  CHECK(tol.epsilon.at(Region::b(1)) ==
        doctest::Approx(std::log(1.05)).epsilon(1e-15));
  // all tolerances positive, minimum tracked
  double lowest = 1e9;
  for (const auto& [r, eps] : tol.epsilon) {
    CHECK(eps > 0);
    lowest = std::min(lowest, eps);
  }
  CHECK(tol.min_epsilon == doctest::Approx(lowest));
  // regions present: BASE + G1..G12 + B1..B12
  CHECK(tol.epsilon.size() == 25);
}

TEST_CASE("derived tolerances in grid mode go through the array bijection") {
  const auto& pair21 = schedyn::builtin("2.1");
  auto tol = schedyn::derive_tolerances(*pair21.f, 6);
  // G(0,2) has linear index 2: its rule pins -(4*2+2) = -10 -> ln(21/20)
  CHECK(tol.epsilon.at(Region::g_grid(0, 2)) ==
        doctest::Approx(std::log(1.05)).epsilon(1e-15));
  // B(0,1) -> B(0,2): pins -(4*2+2) = -10 as well
  CHECK(tol.epsilon.at(Region::b_grid(0, 1)) ==
        doctest::Approx(std::log(1.05)).epsilon(1e-15));
  for (const auto& [r, eps] : tol.epsilon) CHECK(eps > 0);
}
