#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "schedyn/types.hpp"

namespace schedyn {

// Two-parameter address of a disk in the doubly indexed array: row p >= 0,
// column q >= 1. Construction with values outside those domains throws
// std::domain_error.
struct GridIndex {
  Index row = 0;
  Index col = 1;

  GridIndex(Index p, Index q);
  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

// One-parameter address n >= 1 of the same disk along the linearisation.
struct LinearIndex {
  Index n = 1;

  explicit LinearIndex(Index value);
  friend auto operator<=>(const LinearIndex&, const LinearIndex&) = default;
};

// n(p, q) = q(q-1)/2 + 1 + p*q + p(p+1)/2. Bijective onto {1, 2, 3, ...};
// overflow throws std::overflow_error instead of wrapping.
LinearIndex grid_to_linear(GridIndex g);

// Inverse of grid_to_linear: with r the least positive integer satisfying
// r(r+1)/2 >= n and s = r(r+1)/2 - n, the cell is (row r-s-1, col s+1).
GridIndex linear_to_grid(LinearIndex n);

// The first `count` cells of the linearisation, in order n = 1..count.
std::vector<std::pair<LinearIndex, GridIndex>> enumerate_array(Index count);

}  // namespace schedyn
