#pragma once

#include <string_view>

namespace restlab {

inline constexpr std::string_view kName = "restlab";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace restlab
