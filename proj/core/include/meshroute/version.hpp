#pragma once

namespace meshroute {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace meshroute
