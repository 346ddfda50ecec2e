#pragma once

#include <string>

#include "schedyn/geometry.hpp"
#include "schedyn/schedule.hpp"

namespace schedyn {

// Deterministic SVG 1.1 sketch of the family inside `window`, 10 px per
// unit: pieces to scale (disks with index labels, rays, vertical lines),
// plus one arrow per schedule rule instance whose source disk sits in the
// window — f solid blue above the axis, g dashed red below, self-maps as
// loops. An empty window yields a minimal valid empty SVG document.
std::string render_family_diagram(const CarlemanFamily& family,
                                  const Box& window,
                                  const ScheduleMap* f = nullptr,
                                  const ScheduleMap* g = nullptr);

}  // namespace schedyn
