#include <algorithm>

#include "sabl/corpus.hpp"
#include "sabl/porter.hpp"

namespace sabl::corpus {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_upper(c) || is_lower(c) || is_digit(c); }

void split_compound(std::string_view word, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < word.size(); ++i) {
    const char prev = word[i - 1];
    const char cur = word[i];
    const bool boundary =
        (is_lower(prev) && is_upper(cur)) || (is_digit(prev) != is_digit(cur)) ||
        (is_upper(prev) && is_upper(cur) && i + 1 < word.size() && is_lower(word[i + 1]));
    if (boundary) {
      out.emplace_back(word.substr(start, i - start));
      start = i;
    }
  }
  out.emplace_back(word.substr(start));
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool all_digits(std::string_view s) { return std::all_of(s.begin(), s.end(), is_digit); }

bool dropped(std::string_view t, const StopWords& stopwords) {
  return t.size() < 2 || all_digits(t) || stopwords.contains(t);
}

// Iterates the stemmer to a fixed point; Porter is not idempotent on its own
// output (e.g. "agreed" -> "agre" -> "agr").
std::string stable_stem(std::string term) {
  for (int i = 0; i < 8; ++i) {
    std::string next = porter_stem(term);
    if (next == term) break;
    term = std::move(next);
  }
  return term;
}

}  // namespace

std::vector<std::string> split_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alnum(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_alnum(text[i])) ++i;
    if (i > start) split_compound(text.substr(start, i - start), out);
  }
  return out;
}

std::vector<std::string> normalize_tokens(std::span<const std::string> raw, const StopWords& stopwords) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const std::string& token : raw) {
    std::string term = lowercase(token);
    if (dropped(term, stopwords)) continue;
    term = stable_stem(std::move(term));
    if (dropped(term, stopwords)) continue;
    out.push_back(std::move(term));
  }
  return out;
}

std::vector<std::string> Pipeline::tokenize(std::string_view text) const {
  std::vector<std::string> raw;
  if (!options_.keep_compounds) {
    raw = split_identifiers(text);
  } else {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && !is_alnum(text[i])) ++i;
      const std::size_t start = i;
      while (i < text.size() && is_alnum(text[i])) ++i;
      if (i == start) continue;
      const std::string_view word = text.substr(start, i - start);
      const std::size_t before = raw.size();
      split_compound(word, raw);
      if (raw.size() - before > 1) raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(before), std::string(word));
    }
  }
  return normalize_tokens(raw, stopwords_);
}

TokenDocument build_query(std::string id, std::string_view summary, std::string_view description,
                          const Pipeline& pipeline) {
  std::string text;
  text.reserve(summary.size() + description.size() + 1);
  text.append(summary);
  text += ' ';
  text.append(description);
  return {std::move(id), pipeline.tokenize(text)};
}

}  // namespace sabl::corpus
