#ifndef FEATSIM_SRC_UTIL_HPP
#define FEATSIM_SRC_UTIL_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace featsim {

// Shortest round-trip decimal form, locale independent; what every CSV and
// JSON artifact uses so reruns are byte identical.
inline std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, res.ptr);
}

}  // namespace featsim

#endif
