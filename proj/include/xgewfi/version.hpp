#pragma once

namespace xgewfi {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

}  // namespace xgewfi
