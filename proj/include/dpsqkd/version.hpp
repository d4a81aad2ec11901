#pragma once

namespace dpsqkd {

inline constexpr const char* kToolName = "dpsqkd";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace dpsqkd
