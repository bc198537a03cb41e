#pragma once

namespace cellsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cellsim
