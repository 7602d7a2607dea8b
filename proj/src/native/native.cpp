#include "sabl/native.hpp"

#include "sabl/error.hpp"
#include "sabl/hash.hpp"

namespace sabl::native {

bool is_native(std::string_view technique) { return technique == "vsm" || technique == "rvsm"; }

IndexResult load_or_build_index(const fs::path& snapshot, const corpus::Pipeline& pipeline,
                                const corpus::CorpusOptions& options, const fs::path& cache) {
  IndexResult out{ir::TermIndex{}, false, 0, {}};
  corpus::SourceListing listing = corpus::list_sources(snapshot, options);
  Fingerprint fp;
  fp.field(to_hex(listing.content_hash)).field(to_hex(pipeline.fingerprint()));
  out.cache_key = fp.value();
  if (!cache.empty()) {
    if (auto cached = ir::TermIndex::load(cache, out.cache_key)) {
      out.index = std::move(*cached);
      out.cache_hit = true;
      return out;
    }
  }
  corpus::Corpus corpus = corpus::build_corpus(snapshot, pipeline, options);
  out.warnings = std::move(corpus.warnings);
  out.index = ir::TermIndex::build(corpus.documents);
  if (!cache.empty()) {
    if (cache.has_parent_path()) fs::create_directories(cache.parent_path());
    out.index.save(cache, out.cache_key);
  }
  return out;
}

io::TechniqueScores score_reports(std::span<const io::BugReportRecord> reports, std::string_view technique,
                                  const ir::TermIndex& index, const corpus::Pipeline& pipeline) {
  if (!is_native(technique)) throw InputError("unknown technique " + std::string(technique));
  io::TechniqueScores out;
  out.technique = std::string(technique);
  for (const auto& r : reports) {
    corpus::TokenDocument query = corpus::build_query(r.id, r.summary, r.description, pipeline);
    out.by_bug[r.id] = technique == "vsm" ? ir::cosine_score(query, index) : ir::rvsm_score(query, index);
  }
  return out;
}

void attach_native_scores(io::SystemSnapshot& snapshot, std::span<const std::string> techniques,
                          const corpus::Pipeline& pipeline, const NativeOptions& options) {
  bool needed = false;
  for (const auto& t : techniques) needed = needed || (is_native(t) && !snapshot.scores.contains(t));
  if (!needed) return;
  if (snapshot.descriptor.snapshot.empty()) {
    throw InputError(snapshot.label() + ": native techniques need a source snapshot");
  }
  fs::path cache;
  if (!options.cache_dir.empty()) {
    std::string name = snapshot.descriptor.project + "-" + snapshot.descriptor.version + ".idx";
    for (char& c : name) {
      if (c == '/' || c == '\\' || c == ' ') c = '_';
    }
    cache = options.cache_dir / name;
  }
  IndexResult idx = load_or_build_index(snapshot.descriptor.snapshot, pipeline, options.corpus, cache);
  snapshot.warnings.insert(snapshot.warnings.end(), idx.warnings.begin(), idx.warnings.end());
  for (const auto& t : techniques) {
    if (is_native(t) && !snapshot.scores.contains(t)) {
      snapshot.scores[t] = score_reports(snapshot.reports, t, idx.index, pipeline);
    }
  }
}

}  // namespace sabl::native
