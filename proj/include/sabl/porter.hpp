#pragma once

#include <string>
#include <string_view>

namespace sabl::corpus {

/// Classic Porter (1980) stemmer, original rule set. Input must be lowercase
/// ASCII letters; words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace sabl::corpus
