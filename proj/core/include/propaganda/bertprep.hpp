#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "propaganda/corpus.hpp"

namespace propaganda {

// Token -> id table from a one-token-per-line file (line number = id).
// [CLS], [SEP], [PAD] and [UNK] must be present.
class WordPieceVocab {
 public:
  static WordPieceVocab from_file(const std::filesystem::path& path);
  static WordPieceVocab from_text(std::string_view content);
  static WordPieceVocab from_tokens(std::vector<std::string> tokens);

  std::optional<std::int64_t> id(std::string_view token) const;
  bool contains(std::string_view token) const { return id(token).has_value(); }
  const std::string& token(std::int64_t id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return tokens_.size(); }

  std::int64_t cls_id() const { return cls_; }
  std::int64_t sep_id() const { return sep_; }
  std::int64_t pad_id() const { return pad_; }
  std::int64_t unk_id() const { return unk_; }

  // FNV-1a over the tokens joined by '\n'; identifies the vocabulary in
  // export manifests.
  std::uint64_t checksum() const { return checksum_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int64_t> ids_;
  std::int64_t cls_ = -1, sep_ = -1, pad_ = -1, unk_ = -1;
  std::uint64_t checksum_ = 0;
};

struct WordPieceOptions {
  bool lowercase = true;  // lowercase and strip accents, as uncased checkpoints expect
  std::size_t max_chars_per_word = 100;
};

// Whitespace split, then every punctuation character (and CJK ideograph)
// becomes its own word. Control characters are dropped.
std::vector<std::u32string> basic_tokenize(std::u32string_view text, bool lowercase);

// Greedy longest-prefix subwords; continuation pieces carry "##". A word that
// cannot be fully decomposed becomes [UNK].
std::vector<std::string> wordpiece_tokenize(std::u32string_view text, const WordPieceVocab& vocab,
                                            const WordPieceOptions& options = {});

struct EncodedExample {
  std::vector<std::int64_t> input_ids;
  std::vector<int> attention_mask;
  std::int64_t label_id = 0;
};

// [CLS] + tokens (cut to max_len - 2) + [SEP], padded to max_len. The label
// id is the canonical index of `label`; unknown labels raise LabelError.
EncodedExample encode(std::u32string_view text, std::string_view label, const WordPieceVocab& vocab,
                      std::size_t max_len, const WordPieceOptions& options = {});

// Non-pad ids mapped back to tokens.
std::vector<std::string> decode(std::span<const std::int64_t> ids, const WordPieceVocab& vocab);

// Hyperparameters handed to the fine-tuning component.
struct FinetuneManifest {
  std::size_t batch_size = 32;
  double learning_rate = 2e-5;
  std::size_t epochs = 4;
  std::size_t max_len = 128;
  std::string checkpoint = "bert-base-uncased";
  bool do_lower_case = true;
  std::vector<std::string> labels;  // index = label_id
  std::size_t n_examples = 0;
  std::size_t vocab_size = 0;
  std::string vocab_checksum;
  std::string pipeline;  // free-form description of the text stages applied
};

inline constexpr int kExportFormatVersion = 1;

// Writes out_dir/examples.jsonl (one EncodedExample per fragment, in input
// order, plus article_id/begin/end) and out_dir/manifest.json. Output is
// byte-for-byte deterministic. Throws IOError when out_dir is unusable.
FinetuneManifest export_dataset(std::span<const LabeledFragment> fragments,
                                const WordPieceVocab& vocab, std::size_t max_len,
                                const std::filesystem::path& out_dir,
                                FinetuneManifest manifest = {},
                                const WordPieceOptions& options = {});

std::string manifest_to_json(const FinetuneManifest& manifest);
std::string example_to_json(const EncodedExample& example, const LabeledFragment* source = nullptr);

}  // namespace propaganda
