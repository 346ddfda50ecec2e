#pragma once

namespace schedyn {

inline constexpr const char* kToolName = "schedyn";
inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever the shape of a JSON report document changes.
inline constexpr int kSchemaVersion = 1;

}  // namespace schedyn
