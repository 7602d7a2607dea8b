#pragma once

#include <string_view>

namespace sabl {

inline constexpr std::string_view kVersion = "0.1.0";

/// No step of the pipeline draws random numbers.
inline constexpr bool kUsesRandomness = false;

}  // namespace sabl
