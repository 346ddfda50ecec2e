#include "schedyn/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace schedyn {
namespace {

Index checked_add(Index a, Index b) {
  Index out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("lattice: index addition overflows");
  return out;
}

Index checked_mul(Index a, Index b) {
  Index out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("lattice: index multiplication overflows");
  return out;
}

// v(v+1)/2 with overflow checking; one of v, v+1 is even so divide first.
Index triangle(Index v) {
  Index a = v;
  Index b = checked_add(v, 1);
  if (a % 2 == 0) a /= 2; else b /= 2;
  return checked_mul(a, b);
}

// Floor of sqrt(v) for v >= 0: double approximation plus local correction,
// exact for the full 63-bit range.
Index isqrt(Index v) {
  Index r = static_cast<Index>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r > v / r) --r;
  while ((r + 1) <= v / (r + 1)) ++r;
  return r;
}

}  // namespace

GridIndex::GridIndex(Index p, Index q) : row(p), col(q) {
  if (p < 0) throw std::domain_error("GridIndex: row must be >= 0");
  if (q < 1) throw std::domain_error("GridIndex: col must be >= 1");
}

LinearIndex::LinearIndex(Index value) : n(value) {
  if (value < 1) throw std::domain_error("LinearIndex: n must be >= 1");
}

LinearIndex grid_to_linear(GridIndex g) {
  const Index p = g.row;
  const Index q = g.col;
  // q(q-1)/2 + 1 + p*q + p(p+1)/2
  Index n = triangle(checked_add(q, -1));
  n = checked_add(n, 1);
  n = checked_add(n, checked_mul(p, q));
  n = checked_add(n, triangle(p));
  return LinearIndex(n);
}

GridIndex linear_to_grid(LinearIndex idx) {
  const Index n = idx.n;
  // Least r >= 1 with r(r+1)/2 >= n. Start from the real solution of
  // r^2 + r - 2n = 0 and correct locally. 8n must not overflow.
  if (n > (std::numeric_limits<Index>::max() - 1) / 8)
    throw std::overflow_error("lattice: linear index too large to invert");
  Index r = (isqrt(8 * n + 1) - 1) / 2;
  while (triangle(r) < n) ++r;
  while (r > 1 && triangle(r - 1) >= n) --r;
  const Index s = triangle(r) - n;
  return GridIndex(r - s - 1, s + 1);
}

std::vector<std::pair<LinearIndex, GridIndex>> enumerate_array(Index count) {
  if (count < 0) throw std::domain_error("enumerate_array: count must be >= 0");
  std::vector<std::pair<LinearIndex, GridIndex>> cells;
  cells.reserve(static_cast<std::size_t>(count));
  for (Index n = 1; n <= count; ++n)
    cells.emplace_back(LinearIndex(n), linear_to_grid(LinearIndex(n)));
  return cells;
}

}  // namespace schedyn
