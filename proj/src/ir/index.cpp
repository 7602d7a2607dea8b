#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "sabl/error.hpp"
#include "sabl/ir.hpp"

namespace sabl::ir {
namespace {

constexpr char kMagic[8] = {'S', 'A', 'B', 'L', 'I', 'D', 'X', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <class T>
  void pod(T value) {
    out_.write(reinterpret_cast<const char*>(&value), sizeof value);
  }
  void str(const std::string& s) {
    pod(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}
  template <class T>
  T pod() {
    T value{};
    in_.read(reinterpret_cast<char*>(&value), sizeof value);
    if (!in_) corrupt();
    return value;
  }
  std::string str() {
    const auto len = pod<std::uint32_t>();
    if (len > (1u << 24)) corrupt();
    std::string s(len, '\0');
    in_.read(s.data(), len);
    if (!in_) corrupt();
    return s;
  }
  [[noreturn]] void corrupt() const { throw Error("corrupt index cache: " + path_); }

 private:
  std::istream& in_;
  std::string path_;
};

}  // namespace

TermIndex TermIndex::build(std::span<const corpus::TokenDocument> corpus) {
  if (corpus.empty()) throw InputError("empty corpus");
  TermIndex index;

  std::vector<std::string> terms;
  for (const auto& doc : corpus) terms.insert(terms.end(), doc.tokens.begin(), doc.tokens.end());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  index.vocabulary_ = std::move(terms);
  for (std::uint32_t t = 0; t < index.vocabulary_.size(); ++t) index.term_ids_.emplace(index.vocabulary_[t], t);

  const std::size_t n = corpus.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> tf(n);
  index.doc_freq_.assign(index.vocabulary_.size(), 0);
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<std::uint32_t> ids;
    ids.reserve(corpus[d].tokens.size());
    for (const auto& tok : corpus[d].tokens) ids.push_back(index.term_ids_.at(tok));
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      tf[d].emplace_back(ids[i], static_cast<std::uint32_t>(j - i));
      ++index.doc_freq_[ids[i]];
      i = j;
    }
    index.doc_ids_.push_back(corpus[d].id);
    index.doc_lengths_.push_back(corpus[d].tokens.size());
  }

  index.doc_vectors_.resize(n);
  const double total = static_cast<double>(n);
  for (std::size_t d = 0; d < n; ++d) {
    for (auto [term, count] : tf[d]) {
      const double weight =
          (1.0 + std::log(static_cast<double>(count))) * std::log(total / index.doc_freq_[term]);
      if (weight > 0.0) index.doc_vectors_[d].push_back({term, weight});
    }
  }
  index.finalize();
  return index;
}

void TermIndex::finalize() {
  if (term_ids_.empty()) {
    for (std::uint32_t t = 0; t < vocabulary_.size(); ++t) term_ids_.emplace(vocabulary_[t], t);
  }
  doc_norms_.assign(doc_ids_.size(), 0.0);
  postings_.assign(vocabulary_.size(), {});
  for (std::uint32_t d = 0; d < doc_ids_.size(); ++d) {
    double sq = 0.0;
    for (const WeightedTerm& wt : doc_vectors_[d]) {
      sq += wt.weight * wt.weight;
      postings_[wt.term].push_back({d, wt.weight});
    }
    doc_norms_[d] = std::sqrt(sq);
  }
}

std::optional<std::uint32_t> TermIndex::term_id(const std::string& term) const {
  const auto it = term_ids_.find(term);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

double TermIndex::idf(std::uint32_t term) const {
  return std::log(static_cast<double>(doc_ids_.size()) / doc_freq_.at(term));
}

std::vector<double> TermIndex::cosine(const corpus::TokenDocument& query) const {
  std::vector<double> scores(doc_ids_.size(), 0.0);

  std::vector<std::uint32_t> ids;
  for (const auto& tok : query.tokens) {
    if (auto id = term_id(tok)) ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());

  std::vector<std::pair<std::uint32_t, double>> qvec;
  double qsq = 0.0;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    const double w = (1.0 + std::log(static_cast<double>(j - i))) * idf(ids[i]);
    if (w > 0.0) {
      qvec.emplace_back(ids[i], w);
      qsq += w * w;
    }
    i = j;
  }
  if (qsq == 0.0) return scores;
  const double qnorm = std::sqrt(qsq);

  for (auto [term, qw] : qvec) {
    for (const Posting& p : postings_[term]) scores[p.doc] += qw * p.weight;
  }
  for (std::size_t d = 0; d < scores.size(); ++d) {
    if (doc_norms_[d] == 0.0) {
      scores[d] = 0.0;
      continue;
    }
    scores[d] = std::min(1.0, scores[d] / (qnorm * doc_norms_[d]));
  }
  return scores;
}

void TermIndex::save(const std::filesystem::path& path, std::uint64_t content_hash) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write index cache " + path.string());
  Writer w(out);
  out.write(kMagic, sizeof kMagic);
  w.pod(kFormatVersion);
  w.pod(content_hash);
  w.pod(static_cast<std::uint64_t>(vocabulary_.size()));
  for (std::size_t t = 0; t < vocabulary_.size(); ++t) {
    w.str(vocabulary_[t]);
    w.pod(doc_freq_[t]);
  }
  w.pod(static_cast<std::uint64_t>(doc_ids_.size()));
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
    w.str(doc_ids_[d]);
    w.pod(static_cast<std::uint64_t>(doc_lengths_[d]));
    w.pod(static_cast<std::uint64_t>(doc_vectors_[d].size()));
    for (const WeightedTerm& wt : doc_vectors_[d]) {
      w.pod(wt.term);
      w.pod(wt.weight);
    }
  }
  if (!out) throw Error("failed writing index cache " + path.string());
}

std::optional<TermIndex> TermIndex::load(const std::filesystem::path& path, std::uint64_t content_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  Reader r(in, path.string());
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) r.corrupt();
  if (r.pod<std::uint32_t>() != kFormatVersion) return std::nullopt;
  if (r.pod<std::uint64_t>() != content_hash) return std::nullopt;

  TermIndex index;
  const auto nterms = r.pod<std::uint64_t>();
  for (std::uint64_t t = 0; t < nterms; ++t) {
    index.vocabulary_.push_back(r.str());
    index.doc_freq_.push_back(r.pod<std::uint32_t>());
  }
  const auto ndocs = r.pod<std::uint64_t>();
  index.doc_vectors_.resize(ndocs);
  for (std::uint64_t d = 0; d < ndocs; ++d) {
    index.doc_ids_.push_back(r.str());
    index.doc_lengths_.push_back(r.pod<std::uint64_t>());
    const auto nentries = r.pod<std::uint64_t>();
    for (std::uint64_t e = 0; e < nentries; ++e) {
      const auto term = r.pod<std::uint32_t>();
      const auto weight = r.pod<double>();
      if (term >= nterms || !std::isfinite(weight)) r.corrupt();
      index.doc_vectors_[d].push_back({term, weight});
    }
  }
  index.finalize();
  return index;
}

bool TermIndex::operator==(const TermIndex& other) const {
  if (vocabulary_ != other.vocabulary_ || doc_freq_ != other.doc_freq_ || doc_ids_ != other.doc_ids_ ||
      doc_lengths_ != other.doc_lengths_ || doc_vectors_.size() != other.doc_vectors_.size())
    return false;
  for (std::size_t d = 0; d < doc_vectors_.size(); ++d) {
    const auto& a = doc_vectors_[d];
    const auto& b = other.doc_vectors_[d];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].term != b[i].term || a[i].weight != b[i].weight) return false;
    }
  }
  return true;
}

}  // namespace sabl::ir
