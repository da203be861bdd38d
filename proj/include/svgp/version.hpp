#pragma once

namespace svgp {

inline constexpr const char* kVersion = "0.1.0";

// Set from the build system when available; "unknown" otherwise.
const char* git_revision();

}  // namespace svgp
