#pragma once

#include <cstdint>
#include <string>

namespace cellsim {

// Shortest decimal form that parses back to exactly the same double.
// Locale-independent, so output files are byte-stable across environments.
std::string format_double(double value);

std::string format_u64_hex(std::uint64_t value);

}  // namespace cellsim
