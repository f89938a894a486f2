#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <string>

namespace collabnet::detail {

// Shortest representation that parses back to the same double.
inline std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::string format_fixed6(double v) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace collabnet::detail
