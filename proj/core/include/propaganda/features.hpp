#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace propaganda {

// Maximal runs of two or more word characters (letters, digits, underscore).
// Casing is left alone.
std::vector<std::string> tokenize(std::u32string_view text);

// Contiguous n-grams (joined by a single space) for n in [min_n, max_n].
std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t min_n,
                                std::size_t max_n);

class SparseVector {
 public:
  struct Entry {
    std::size_t index;
    double value;
  };

  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}
  // Entries must be strictly increasing in index, finite and nonzero.
  SparseVector(std::size_t dim, std::vector<Entry> entries);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }
  double norm() const;
  double dot(std::span<const double> dense) const;
  // Value at `index`, zero when absent.
  double at(std::size_t index) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

// Row-major sparse matrix with a fixed column count.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t cols) : cols_(cols) {}

  void push_back(SparseVector row);
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseVector& row(std::size_t i) const { return rows_[i]; }
  std::span<const SparseVector> row_span() const { return rows_; }

  // y = X v  (y has rows() entries)
  void multiply(std::span<const double> v, std::span<double> y) const;
  // y = X^T u  (y has cols() entries)
  void multiply_transposed(std::span<const double> u, std::span<double> y) const;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

// Fitted term statistics. Columns are assigned in lexicographic term order.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> document_frequencies,
             std::size_t n_docs);

  std::size_t size() const { return terms_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& document_frequencies() const { return df_; }
  // Column index, or size() when the term is unknown.
  std::size_t index_of(std::string_view term) const;
  std::size_t df(std::string_view term) const;
  // Smoothed idf: ln((1 + n_docs) / (1 + df)) + 1.
  double idf(std::size_t column) const;

  // Header `n_docs\t<n>` followed by one `term\tdf` line per column.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::string_view tsv);

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::size_t n_docs_ = 0;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Throws EmptyVocabularyError when `docs` is empty or contains no terms.
Vocabulary fit_vocab(const std::vector<std::vector<std::string>>& docs);

// Raw term counts times idf, each row scaled to unit L2 norm. Unknown terms
// are ignored; a row with no known terms stays empty.
SparseMatrix tfidf_transform(const std::vector<std::vector<std::string>>& docs,
                             const Vocabulary& vocab);

struct FeatureConfig {
  std::size_t ngram_min = 1;
  std::size_t ngram_max = 1;
};

// Tokenize + n-gram expansion for a batch of texts.
std::vector<std::vector<std::string>> analyze(const std::vector<std::u32string>& texts,
                                              const FeatureConfig& config = {});

}  // namespace propaganda
