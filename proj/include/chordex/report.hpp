#pragma once

#include <string>
#include <vector>

#include "chordex/vec.hpp"

namespace chordex {

/// Shortest round-trip-exact decimal form (17 significant digits).
std::string format_g17(double x);

/// "x,y,..." with 17 significant digits per component.
std::string format_vec(const Vec& v);

/// One key=value line.
std::string kv(const std::string& key, const std::string& value);
std::string kv(const std::string& key, double value);
std::string kv(const std::string& key, const Vec& value);
std::string kv(const std::string& key, bool value);
std::string kv(const std::string& key, int value);

}  // namespace chordex
