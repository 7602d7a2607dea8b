#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace sabl {

struct SanitizedText {
  std::string text;
  std::size_t replacements = 0;  // invalid UTF-8 sequences replaced with U+FFFD
};

/// Replaces every invalid UTF-8 sequence with U+FFFD.
SanitizedText sanitize_utf8(std::string_view bytes);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::string& path);

/// Snapshot-relative module identity: forward slashes, no leading "./".
std::string normalize_module_path(std::string_view path);

/// Fixed-point decimal rendering ("%.*f").
std::string format_fixed(double value, int decimals);

/// 1-based line number of a byte offset within text.
std::size_t line_of_offset(std::string_view text, std::size_t offset);

}  // namespace sabl
