#pragma once

namespace abilityrank {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace abilityrank
