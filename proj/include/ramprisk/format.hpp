#pragma once

#include <string>

namespace ramprisk {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace ramprisk
