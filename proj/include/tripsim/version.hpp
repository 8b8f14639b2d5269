#pragma once

namespace tripsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tripsim
