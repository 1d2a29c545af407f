#pragma once

#include <string>

namespace chainfountain {

/// Shortest decimal text that parses back to exactly `value` ("4", "0.1",
/// "1e-07"). Independent of the C locale.
std::string format_number(double value);

}  // namespace chainfountain
