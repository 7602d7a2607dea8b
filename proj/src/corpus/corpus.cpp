#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "sabl/corpus.hpp"
#include "sabl/error.hpp"
#include "sabl/hash.hpp"
#include "sabl/parallel.hpp"
#include "sabl/text_util.hpp"

namespace sabl::corpus {
namespace fs = std::filesystem;

namespace {

struct SourceFile {
  std::string module;
  fs::path path;
};

std::vector<SourceFile> find_sources(const fs::path& root, const CorpusOptions& options,
                                     std::vector<std::string>& warnings) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw InputError("snapshot directory not found: " + root.string());

  std::vector<SourceFile> files;
  auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw InputError("cannot list " + root.string() + ": " + ec.message());
  for (auto end = fs::recursive_directory_iterator(); it != end; it.increment(ec)) {
    if (ec) {
      warnings.push_back("cannot list entry under " + root.string() + ": " + ec.message());
      ec.clear();
      continue;
    }
    if (!it->is_regular_file(ec)) continue;
    const std::string ext = it->path().extension().string();
    if (std::find(options.extensions.begin(), options.extensions.end(), ext) == options.extensions.end()) continue;
    files.push_back({normalize_module_path(fs::relative(it->path(), root).generic_string()), it->path()});
  }
  std::sort(files.begin(), files.end(), [](const SourceFile& a, const SourceFile& b) { return a.module < b.module; });
  return files;
}

std::optional<std::string> try_read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

}  // namespace

SourceListing list_sources(const fs::path& root, const CorpusOptions& options) {
  SourceListing listing;
  const auto files = find_sources(root, options, listing.warnings);
  Fingerprint fp;
  for (const SourceFile& f : files) {
    auto bytes = try_read(f.path);
    if (!bytes) {
      listing.warnings.push_back("unreadable source file skipped: " + f.module);
      continue;
    }
    fp.field(f.module).field(*bytes);
    listing.modules.push_back(f.module);
  }
  listing.content_hash = fp.value();
  return listing;
}

Corpus build_corpus(const fs::path& root, const Pipeline& pipeline, const CorpusOptions& options) {
  Corpus corpus;
  const auto files = find_sources(root, options, corpus.warnings);

  struct Slot {
    std::optional<std::string> bytes;
    std::size_t replacements = 0;
    TokenDocument doc;
  };
  std::vector<Slot> slots(files.size());
  parallel_for(files.size(), options.jobs, [&](std::size_t i) {
    slots[i].bytes = try_read(files[i].path);
    if (!slots[i].bytes) return;
    SanitizedText clean = sanitize_utf8(*slots[i].bytes);
    slots[i].replacements = clean.replacements;
    slots[i].doc = pipeline.process({files[i].module, clean.text, DocumentKind::kSource});
  });

  Fingerprint fp;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!slots[i].bytes) {
      corpus.warnings.push_back("unreadable source file skipped: " + files[i].module);
      continue;
    }
    if (slots[i].replacements > 0) {
      corpus.warnings.push_back(files[i].module + ": replaced " + std::to_string(slots[i].replacements) +
                                " invalid UTF-8 sequence(s)");
    }
    fp.field(files[i].module).field(*slots[i].bytes);
    corpus.documents.push_back(std::move(slots[i].doc));
  }
  corpus.content_hash = fp.value();
  return corpus;
}

void write_corpus_jsonl(std::ostream& out, std::span<const TokenDocument> documents) {
  for (const TokenDocument& doc : documents) {
    nlohmann::json line{{"id", doc.id}, {"tokens", doc.tokens}};
    out << line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

}  // namespace sabl::corpus
