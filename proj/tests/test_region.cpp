#include <set>
#include <sstream>

#include "doctest.h"
#include "schedyn/region.hpp"

using namespace schedyn;

TEST_CASE("region labels render and parse back") {
  const Region samples[] = {Region::base(),      Region::g(1),
                            Region::b(12),       Region::g(40),
                            Region::line_l(2),   Region::line_m(4),
                            Region::g_grid(0, 3), Region::b_grid(5, 1)};
  for (const Region& r : samples) {
    CAPTURE(to_string(r));
    const auto back = parse_region(to_string(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
}

TEST_CASE("grid-style labels parse to the same disks as linear ones") {
  CHECK(parse_region("G(0,1)") == Region::g(1));
  CHECK(parse_region("G(0,2)") == Region::g(2));
  CHECK(parse_region("G(1,1)") == Region::g(3));
  CHECK(parse_region("B(2,1)") == Region::b(6));
  CHECK(to_grid_string(Region::g(3)) == "G(1,1)");
  CHECK(to_grid_string(Region::base()) == "BASE");
}

TEST_CASE("junk labels are rejected") {
  for (const char* bad : {"", "G", "B0", "G0", "G-1", "Q4", "G(1)", "G(1,0)",
                          "G(-1,2)", "BASEx", "G4x", "L0", "4", "G(1,2)x"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_region(bad).has_value());
  }
}

TEST_CASE("disk factories enforce their index domains") {
  CHECK_THROWS_AS(Region::g(0), std::domain_error);
  CHECK_THROWS_AS(Region::b(-3), std::domain_error);
  CHECK_THROWS_AS(Region::line_l(0), std::domain_error);
  CHECK_THROWS_AS(Region::g_grid(-1, 1), std::domain_error);
  CHECK_THROWS_AS(Region::g_grid(0, 0), std::domain_error);
}

TEST_CASE("grid accessor only works on disks") {
  CHECK(Region::g_grid(2, 3).grid() == GridIndex(2, 3));
  CHECK(Region::b(1).grid() == GridIndex(0, 1));
  CHECK_THROWS_AS(Region::base().grid(), std::domain_error);
  CHECK_THROWS_AS(Region::line_l(1).grid(), std::domain_error);
}

TEST_CASE("regions order and hash as value types") {
  std::set<Region> s{Region::g(1), Region::b(1), Region::g(1), Region::base()};
  CHECK(s.size() == 3);
  CHECK(std::hash<Region>{}(Region::g(7)) != std::hash<Region>{}(Region::b(7)));

  std::ostringstream os;
  os << Region::b_grid(1, 2);
  CHECK(os.str() == to_string(Region::b_grid(1, 2)));
}
