#include <algorithm>
#include <fstream>
#include <string>

#include "sabl/corpus.hpp"
#include "sabl/error.hpp"
#include "sabl/hash.hpp"

namespace sabl::corpus {
namespace {

constexpr std::string_view kEnglish[] = {
    "a",       "about",   "above",   "after",   "again",   "against", "all",     "am",
    "an",      "and",     "any",     "are",     "as",      "at",      "be",      "because",
    "been",    "before",  "being",   "below",   "between", "both",    "but",     "by",
    "can",     "could",   "did",     "do",      "does",    "doing",   "down",    "during",
    "each",    "few",     "for",     "from",    "further", "had",     "has",     "have",
    "having",  "he",      "her",     "here",    "hers",    "herself", "him",     "himself",
    "his",     "how",     "i",       "if",      "in",      "into",    "is",      "it",
    "its",     "itself",  "just",    "me",      "more",    "most",    "my",      "myself",
    "no",      "nor",     "not",     "now",     "of",      "off",     "on",      "once",
    "only",    "or",      "other",   "ought",   "our",     "ours",    "ourselves", "out",
    "over",    "own",     "same",    "she",     "should",  "so",      "some",    "such",
    "than",    "that",    "the",     "their",   "theirs",  "them",    "themselves", "then",
    "there",   "these",   "they",    "this",    "those",   "through", "to",      "too",
    "under",   "until",   "up",      "very",    "was",     "we",      "were",    "what",
    "when",    "where",   "which",   "while",   "who",     "whom",    "why",     "will",
    "with",    "would",   "you",     "your",    "yours",   "yourself", "yourselves",
};

constexpr std::string_view kJava[] = {
    "abstract", "assert",     "boolean",   "break",     "byte",     "case",      "catch",
    "char",     "class",      "const",     "continue",  "default",  "do",        "double",
    "else",     "enum",       "extends",   "final",     "finally",  "float",     "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",     "interface",
    "long",     "native",     "new",       "package",   "private",  "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",    "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",      "void",      "volatile",
    "while",    "true",       "false",     "null",      "var",      "record",    "yield",
};

}  // namespace

StopWords StopWords::standard() {
  std::unordered_set<std::string> words;
  for (std::string_view w : kEnglish) words.emplace(w);
  for (std::string_view w : kJava) words.emplace(w);
  return StopWords(std::move(words));
}

StopWords StopWords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stopword list " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string term = line.substr(first, last - first + 1);
    for (char& c : term) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    words.insert(std::move(term));
  }
  return StopWords(std::move(words));
}

std::vector<std::string> StopWords::sorted_words() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Pipeline::fingerprint() const {
  Fingerprint fp;
  fp.field(options_.keep_compounds ? "compounds" : "split");
  for (const auto& w : stopwords_.sorted_words()) fp.field(w);
  return fp.value();
}

}  // namespace sabl::corpus
