#include "sabl/hash.hpp"

#include "sabl/text_util.hpp"

namespace sabl {

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string Fingerprint::hex() const { return to_hex(state_); }

std::uint64_t fingerprint_file(const std::string& path) {
  return Fingerprint{}.update(read_file(path)).value();
}

}  // namespace sabl
