#pragma once

namespace addlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace addlab
