#include "propaganda/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "propaganda/errors.hpp"
#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

bool is_token_char(char32_t c) { return c == U'_' || unicode::is_alnum(c); }

}  // namespace

std::vector<std::string> tokenize(std::u32string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_token_char(text[j])) ++j;
    if (j - i >= 2) tokens.push_back(unicode::to_utf8(text.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t min_n,
                                std::size_t max_n) {
  if (min_n == 1 && max_n == 1) return tokens;
  std::vector<std::string> out;
  for (std::size_t n = std::max<std::size_t>(min_n, 1); n <= max_n; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t k = 1; k < n; ++k) gram += ' ' + tokens[i + k];
      out.push_back(std::move(gram));
    }
  }
  return out;
}

SparseVector::SparseVector(std::size_t dim, std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (e.index >= dim_ || (k > 0 && entries_[k - 1].index >= e.index)) {
      throw ShapeError("sparse vector indices must be strictly increasing and below dim");
    }
    if (!std::isfinite(e.value) || e.value == 0.0) {
      throw ShapeError("sparse vector values must be finite and nonzero");
    }
  }
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.value * e.value;
  return std::sqrt(s);
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.value * dense[e.index];
  return s;
}

double SparseVector::at(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.index < i; });
  return it != entries_.end() && it->index == index ? it->value : 0.0;
}

void SparseMatrix::push_back(SparseVector row) {
  if (row.dim() != cols_) {
    throw ShapeError("row dimension " + std::to_string(row.dim()) + " != " +
                     std::to_string(cols_));
  }
  rows_.push_back(std::move(row));
}

void SparseMatrix::multiply(std::span<const double> v, std::span<double> y) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) y[i] = rows_[i].dot(v);
}

void SparseMatrix::multiply_transposed(std::span<const double> u, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (u[i] == 0.0) continue;
    for (const auto& e : rows_[i].entries()) y[e.index] += u[i] * e.value;
  }
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> document_frequencies,
                       std::size_t n_docs)
    : terms_(std::move(terms)), df_(std::move(document_frequencies)), n_docs_(n_docs) {
  if (terms_.size() != df_.size()) throw ShapeError("vocabulary terms/df length mismatch");
  if (n_docs_ == 0) throw EmptyVocabularyError("vocabulary needs at least one document");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (df_[i] == 0 || df_[i] > n_docs_) throw FormatError("document frequency out of range for '" + terms_[i] + "'");
    if (!index_.emplace(terms_[i], i).second) throw FormatError("duplicate term '" + terms_[i] + "'");
  }
}

std::size_t Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(term);
  return it == index_.end() ? terms_.size() : it->second;
}

std::size_t Vocabulary::df(std::string_view term) const {
  const auto i = index_of(term);
  return i < df_.size() ? df_[i] : 0;
}

double Vocabulary::idf(std::size_t column) const {
  return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + static_cast<double>(df_[column]))) +
         1.0;
}

std::string Vocabulary::to_tsv() const {
  std::string out = "n_docs\t" + std::to_string(n_docs_) + "\n";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out += terms_[i];
    out += '\t';
    out += std::to_string(df_[i]);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::from_tsv(std::string_view tsv) {
  auto parse_count = [](std::string_view s, std::size_t line) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw FormatError("bad count '" + std::string(s) + "'", line);
    }
    return v;
  };
  std::vector<std::string> terms;
  std::vector<std::size_t> dfs;
  std::size_t n_docs = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    std::size_t eol = tsv.find('\n', pos);
    if (eol == std::string_view::npos) eol = tsv.size();
    auto line = tsv.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto tab = line.rfind('\t');
    if (tab == std::string_view::npos) throw FormatError("expected term<TAB>count", line_no);
    if (line_no == 1) {
      if (line.substr(0, tab) != "n_docs") throw FormatError("missing n_docs header", 1);
      n_docs = parse_count(line.substr(tab + 1), 1);
      continue;
    }
    terms.emplace_back(line.substr(0, tab));
    dfs.push_back(parse_count(line.substr(tab + 1), line_no));
  }
  if (line_no == 0) throw FormatError("empty vocabulary file");
  return Vocabulary(std::move(terms), std::move(dfs), n_docs);
}

Vocabulary fit_vocab(const std::vector<std::vector<std::string>>& docs) {
  if (docs.empty()) throw EmptyVocabularyError("cannot fit a vocabulary on zero documents");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::set<std::string_view> seen(doc.begin(), doc.end());
    for (auto term : seen) ++df[std::string(term)];
  }
  if (df.empty()) throw EmptyVocabularyError("all documents are empty");
  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  terms.reserve(df.size());
  counts.reserve(df.size());
  for (auto& [term, count] : df) {
    terms.push_back(term);
    counts.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(counts), docs.size());
}

SparseMatrix tfidf_transform(const std::vector<std::vector<std::string>>& docs,
                             const Vocabulary& vocab) {
  SparseMatrix out(vocab.size());
  for (const auto& doc : docs) {
    std::map<std::size_t, double> counts;
    for (const auto& term : doc) {
      const auto col = vocab.index_of(term);
      if (col < vocab.size()) counts[col] += 1.0;
    }
    std::vector<SparseVector::Entry> entries;
    entries.reserve(counts.size());
    double sq = 0.0;
    for (const auto& [col, tf] : counts) {
      const double w = tf * vocab.idf(col);
      entries.push_back({col, w});
      sq += w * w;
    }
    if (sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (auto& e : entries) e.value /= norm;
    }
    out.push_back(SparseVector(vocab.size(), std::move(entries)));
  }
  return out;
}

std::vector<std::vector<std::string>> analyze(const std::vector<std::u32string>& texts,
                                              const FeatureConfig& config) {
  std::vector<std::vector<std::string>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(ngrams(tokenize(t), config.ngram_min, config.ngram_max));
  return out;
}

}  // namespace propaganda
