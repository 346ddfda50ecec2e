#pragma once

#include <cstdint>

namespace schedyn {

// All symbolic indices (region numbers, array rows/columns, orbit steps) are
// signed 64-bit; arithmetic on them is overflow-checked where it can grow.
using Index = std::int64_t;

}  // namespace schedyn
