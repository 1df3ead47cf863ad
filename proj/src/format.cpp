#include "ramprisk/format.hpp"

#include <array>
#include <charconv>

namespace ramprisk {

std::string format_double(double value) {
    if (value == 0.0) return "0";  // also folds -0
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

}  // namespace ramprisk
