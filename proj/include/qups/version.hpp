#pragma once

namespace qups {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qups
