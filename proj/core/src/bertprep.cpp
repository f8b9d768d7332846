#include "propaganda/bertprep.hpp"

#include <json.hpp>

#include "propaganda/errors.hpp"
#include "propaganda/hash.hpp"
#include "propaganda/labels.hpp"
#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

bool is_bert_punctuation(char32_t c) {
  if ((c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
      (c >= 123 && c <= 126)) {
    return true;
  }
  return unicode::is_punctuation(c);
}

bool is_cjk(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF) ||
         (c >= 0x20000 && c <= 0x2A6DF) || (c >= 0x2A700 && c <= 0x2B73F) ||
         (c >= 0x2B740 && c <= 0x2B81F) || (c >= 0x2B820 && c <= 0x2CEAF) ||
         (c >= 0xF900 && c <= 0xFAFF) || (c >= 0x2F800 && c <= 0x2FA1F);
}

}  // namespace

WordPieceVocab WordPieceVocab::from_tokens(std::vector<std::string> tokens) {
  WordPieceVocab v;
  v.tokens_ = std::move(tokens);
  std::string joined;
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
    if (i) joined += '\n';
    joined += v.tokens_[i];
    // First occurrence wins, matching how reference loaders treat duplicates.
    v.ids_.emplace(v.tokens_[i], static_cast<std::int64_t>(i));
  }
  v.checksum_ = fnv1a64(joined);
  auto need = [&](std::string_view name) {
    auto id = v.id(name);
    if (!id) throw FormatError("vocabulary lacks special token " + std::string(name));
    return *id;
  };
  v.cls_ = need("[CLS]");
  v.sep_ = need("[SEP]");
  v.pad_ = need("[PAD]");
  v.unk_ = need("[UNK]");
  return v;
}

WordPieceVocab WordPieceVocab::from_text(std::string_view content) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    tokens.emplace_back(line);
  }
  return from_tokens(std::move(tokens));
}

WordPieceVocab WordPieceVocab::from_file(const std::filesystem::path& path) {
  return from_text(read_file(path));
}

std::optional<std::int64_t> WordPieceVocab::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::u32string> basic_tokenize(std::u32string_view text, bool lowercase) {
  std::vector<std::u32string> words;
  std::u32string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    words.push_back(lowercase ? unicode::lower_strip_accents(cur) : cur);
    cur.clear();
  };
  for (char32_t c : text) {
    if (c == 0 || c == 0xFFFD || unicode::is_control(c)) continue;
    if (unicode::is_space(c)) {
      flush();
    } else if (is_bert_punctuation(c) || is_cjk(c)) {
      flush();
      words.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  flush();
  // Accent stripping can leave a word empty (a lone combining mark).
  std::erase_if(words, [](const auto& w) { return w.empty(); });
  return words;
}

std::vector<std::string> wordpiece_tokenize(std::u32string_view text, const WordPieceVocab& vocab,
                                            const WordPieceOptions& options) {
  std::vector<std::string> out;
  const std::string unk = vocab.token(vocab.unk_id());
  for (const auto& word : basic_tokenize(text, options.lowercase)) {
    if (word.size() > options.max_chars_per_word) {
      out.push_back(unk);
      continue;
    }
    std::vector<std::string> pieces;
    std::size_t start = 0;
    bool bad = false;
    while (start < word.size()) {
      std::size_t end = word.size();
      std::string found;
      while (start < end) {
        std::string piece = start > 0 ? "##" : "";
        piece += unicode::to_utf8(std::u32string_view(word).substr(start, end - start));
        if (vocab.contains(piece)) {
          found = std::move(piece);
          break;
        }
        --end;
      }
      if (found.empty()) {
        bad = true;
        break;
      }
      pieces.push_back(std::move(found));
      start = end;
    }
    if (bad) {
      out.push_back(unk);
    } else {
      out.insert(out.end(), pieces.begin(), pieces.end());
    }
  }
  return out;
}

EncodedExample encode(std::u32string_view text, std::string_view label, const WordPieceVocab& vocab,
                      std::size_t max_len, const WordPieceOptions& options) {
  if (max_len < 3) throw ConfigError("max_len must be at least 3");
  EncodedExample ex;
  ex.label_id = static_cast<std::int64_t>(label_index(parse_label(label)));

  auto tokens = wordpiece_tokenize(text, vocab, options);
  if (tokens.size() > max_len - 2) tokens.resize(max_len - 2);

  ex.input_ids.reserve(max_len);
  ex.input_ids.push_back(vocab.cls_id());
  for (const auto& t : tokens) ex.input_ids.push_back(vocab.id(t).value_or(vocab.unk_id()));
  ex.input_ids.push_back(vocab.sep_id());
  ex.attention_mask.assign(ex.input_ids.size(), 1);
  ex.input_ids.resize(max_len, vocab.pad_id());
  ex.attention_mask.resize(max_len, 0);
  return ex;
}

std::vector<std::string> decode(std::span<const std::int64_t> ids, const WordPieceVocab& vocab) {
  std::vector<std::string> out;
  for (auto id : ids) {
    if (id == vocab.pad_id()) continue;
    out.push_back(vocab.token(id));
  }
  return out;
}

std::string manifest_to_json(const FinetuneManifest& m) {
  nlohmann::ordered_json j;
  j["format_version"] = kExportFormatVersion;
  j["batch_size"] = m.batch_size;
  j["learning_rate"] = m.learning_rate;
  j["epochs"] = m.epochs;
  j["max_len"] = m.max_len;
  j["checkpoint"] = m.checkpoint;
  j["do_lower_case"] = m.do_lower_case;
  j["labels"] = m.labels;
  j["n_examples"] = m.n_examples;
  j["vocab_size"] = m.vocab_size;
  j["vocab_checksum"] = m.vocab_checksum;
  j["pipeline"] = m.pipeline;
  j["examples_file"] = "examples.jsonl";
  return j.dump(2) + "\n";
}

std::string example_to_json(const EncodedExample& ex, const LabeledFragment* source) {
  nlohmann::ordered_json j;
  j["input_ids"] = ex.input_ids;
  j["attention_mask"] = ex.attention_mask;
  j["label_id"] = ex.label_id;
  if (source != nullptr) {
    j["article_id"] = source->article_id;
    j["begin"] = source->begin;
    j["end"] = source->end;
  }
  return j.dump();
}

FinetuneManifest export_dataset(std::span<const LabeledFragment> fragments,
                                const WordPieceVocab& vocab, std::size_t max_len,
                                const std::filesystem::path& out_dir, FinetuneManifest manifest,
                                const WordPieceOptions& options) {
  if (fragments.empty()) throw ShapeError("nothing to export: no fragments");
  manifest.max_len = max_len;
  manifest.do_lower_case = options.lowercase;
  manifest.labels.assign(kLabelNames.begin(), kLabelNames.end());
  manifest.n_examples = fragments.size();
  manifest.vocab_size = vocab.size();
  manifest.vocab_checksum = hex64(vocab.checksum());

  std::string lines;
  for (const auto& f : fragments) {
    lines += example_to_json(encode(f.text, to_string(f.label), vocab, max_len, options), &f);
    lines += '\n';
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IOError("cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "examples.jsonl", lines);
  write_file(out_dir / "manifest.json", manifest_to_json(manifest));
  return manifest;
}

}  // namespace propaganda
