#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sabl {

/// 64-bit FNV-1a, used for content fingerprints (cache invalidation, run manifests).
class Fingerprint {
 public:
  Fingerprint& update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  /// Appends a separator so that ("ab","c") and ("a","bc") differ.
  Fingerprint& field(std::string_view bytes) {
    update(bytes);
    const char sep = '\0';
    return update(std::string_view(&sep, 1));
  }

  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t value);

/// Fingerprint of a file's bytes; throws InputError when unreadable.
std::uint64_t fingerprint_file(const std::string& path);

}  // namespace sabl
