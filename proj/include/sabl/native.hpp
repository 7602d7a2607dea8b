#pragma once

// Native VSM / rVSM scoring of a loaded system, with an optional index cache.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "sabl/corpus.hpp"
#include "sabl/dataio.hpp"
#include "sabl/ir.hpp"

namespace sabl::native {

namespace fs = std::filesystem;

bool is_native(std::string_view technique);

struct IndexResult {
  ir::TermIndex index;
  bool cache_hit = false;
  std::uint64_t cache_key = 0;
  std::vector<std::string> warnings;
};

/// Cache key: content hash of the sources combined with the pipeline
/// fingerprint. A stale or absent cache file is rebuilt and rewritten.
IndexResult load_or_build_index(const fs::path& snapshot, const corpus::Pipeline& pipeline,
                                const corpus::CorpusOptions& options, const fs::path& cache = {});

/// Scores every report of the snapshot with "vsm" or "rvsm".
io::TechniqueScores score_reports(std::span<const io::BugReportRecord> reports, std::string_view technique,
                                  const ir::TermIndex& index, const corpus::Pipeline& pipeline);

struct NativeOptions {
  corpus::CorpusOptions corpus;
  fs::path cache_dir;  // empty: no caching
};

/// Adds scores for each native technique in `techniques` that the snapshot
/// does not already carry. Throws InputError when the system has no snapshot.
void attach_native_scores(io::SystemSnapshot& snapshot, std::span<const std::string> techniques,
                          const corpus::Pipeline& pipeline, const NativeOptions& options);

}  // namespace sabl::native
