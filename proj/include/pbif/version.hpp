#pragma once

namespace pbif {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pbif
