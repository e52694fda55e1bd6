#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wtree::detail {

inline std::string join(const std::vector<std::string>& parts,
                        const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Steps a mixed-radix counter where every digit has the same radix.
// Returns false once the counter wraps past the last combination.
inline bool next_tuple(std::vector<std::size_t>& digits, std::size_t radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace wtree::detail
