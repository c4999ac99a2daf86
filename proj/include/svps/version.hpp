#pragma once

namespace svps {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace svps
