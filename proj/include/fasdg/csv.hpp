#ifndef FASDG_CSV_HPP
#define FASDG_CSV_HPP

#include <charconv>
#include <string>

namespace fas {

// Shortest decimal form that round-trips to the identical bit pattern.
// All emitted CSV goes through this, so reruns are byte-for-byte stable.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace fas

#endif
