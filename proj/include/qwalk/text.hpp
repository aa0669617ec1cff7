#pragma once

#include <string>

namespace qwalk {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace qwalk
