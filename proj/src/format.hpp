#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace twophoton::detail {

// Shortest representation that parses back to the same double; independent
// of the global locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_uint(std::uint64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace twophoton::detail
