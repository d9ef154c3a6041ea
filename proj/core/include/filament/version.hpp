#pragma once

namespace filament {

inline constexpr const char* kFilamentVersion = "0.1.0";

} // namespace filament
