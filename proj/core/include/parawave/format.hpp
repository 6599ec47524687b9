#pragma once

#include <string>

namespace parawave {

// Shortest decimal representation that round-trips to the same double.
// All numeric text the library writes (CSV, JSON) goes through this, so
// identical runs produce byte-identical artifacts.
std::string format_double(double v);

}  // namespace parawave
