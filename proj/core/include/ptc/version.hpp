#pragma once

namespace ptc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ptc
