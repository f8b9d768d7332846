#include "propaganda/nermap.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

#include "propaganda/corpus.hpp"
#include "propaganda/errors.hpp"
#include "propaganda/gazetteer.hpp"
#include "propaganda/textprep.hpp"
#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

constexpr std::array<std::u32string_view, 5> kHonorifics = {U"Mr", U"Mrs", U"Dr", U"President",
                                                            U"Senator"};

// Capitalized words that commonly open a sentence without naming anyone.
constexpr std::array<std::u32string_view, 16> kSentenceOpeners = {
    U"The", U"A",   U"An",  U"This", U"That", U"These", U"Those", U"In",
    U"On",  U"At",  U"But", U"And",  U"If",   U"When",  U"It",    U"We"};

struct Token {
  std::size_t begin;
  std::size_t end;
};

bool is_word_char(char32_t c) {
  return unicode::is_alnum(c) || unicode::is_mark(c) || c == U'\'' || c == U'’';
}

std::vector<Token> word_tokens(std::u32string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!unicode::is_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (is_word_char(text[j]) ||
                               (text[j] == U'-' && j + 1 < text.size() &&
                                unicode::is_alnum(text[j + 1])))) {
      ++j;
    }
    tokens.push_back({i, j});
    i = j;
  }
  return tokens;
}

bool only_spaces(std::u32string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char32_t c) { return unicode::is_space(c); });
}

template <std::size_t N>
bool one_of(const std::array<std::u32string_view, N>& words, std::u32string_view w) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

// Sentence start: beginning of text, or only whitespace since a terminator
// or a newline.
bool sentence_initial(std::u32string_view text, std::size_t pos) {
  std::size_t i = pos;
  while (i > 0) {
    const char32_t c = text[i - 1];
    if (c == U'\n') return true;
    if (!unicode::is_space(c) && c != U'"' && c != U'“' && c != U'\'' && c != U'‘' && c != U'(') {
      return c == U'.' || c == U'!' || c == U'?' || c == U':';
    }
    --i;
  }
  return true;
}

}  // namespace

std::vector<EntityAnnotation> parse_entities(std::string_view jsonl) {
  std::vector<EntityAnnotation> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    std::string_view line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; })) {
      continue;
    }
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw FormatError("expected a JSON object", line_no);
    EntityAnnotation ann;
    try {
      const auto& key = obj.at("doc_key");
      ann.doc_key = key.is_string() ? key.get<std::string>() : key.dump();
      const auto& b = obj.at("begin");
      const auto& e = obj.at("end");
      if (!b.is_number_unsigned() || !e.is_number_unsigned()) {
        throw FormatError("begin/end must be non-negative integers", line_no);
      }
      ann.begin = b.get<std::size_t>();
      ann.end = e.get<std::size_t>();
      ann.entity_type = obj.at("type").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad entity record: ") + e.what(), line_no);
    }
    if (ann.doc_key.empty()) throw FormatError("empty doc_key", line_no);
    if (ann.entity_type.empty()) throw FormatError("empty entity type", line_no);
    if (ann.begin >= ann.end) throw FormatError("entity span is empty or inverted", line_no);
    out.push_back(std::move(ann));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.doc_key, a.begin, a.end) < std::tie(b.doc_key, b.begin, b.end);
  });
  return out;
}

std::vector<EntityAnnotation> ingest_entities(const std::filesystem::path& path) {
  return parse_entities(read_file(path));
}

std::vector<EntityAnnotation> entities_within(const std::vector<EntityAnnotation>& all,
                                              std::string_view doc_key, std::size_t begin,
                                              std::size_t end) {
  std::vector<EntityAnnotation> out;
  for (const auto& a : all) {
    if (a.doc_key != doc_key || a.begin < begin || a.end > end) continue;
    out.push_back({a.doc_key, a.begin - begin, a.end - begin, a.entity_type});
  }
  return out;
}

const std::set<std::string>& various_entity_types() {
  static const std::set<std::string> kTypes{"PERSON", "NORP", "ORG", "GPE", "LOC", "FAC"};
  return kTypes;
}

std::vector<EntityAnnotation> heuristic_person_tagger(std::u32string_view text,
                                                      const Gazetteer* exclude,
                                                      std::string_view doc_key) {
  const auto tags = default_protected_tags();
  std::vector<GazetteerMatch> excluded;
  if (exclude != nullptr) excluded = exclude->find_matches(text);

  auto covered = [&](const Token& t) {
    return std::any_of(excluded.begin(), excluded.end(),
                       [&](const GazetteerMatch& m) { return t.begin < m.end && m.begin < t.end; });
  };
  auto capitalized = [&](const Token& t) {
    if (!unicode::is_upper(text[t.begin])) return false;
    if (tags.contains(std::u32string(text.substr(t.begin, t.end - t.begin)))) return false;
    return !covered(t);
  };

  const auto tokens = word_tokens(text);
  std::vector<EntityAnnotation> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!capitalized(tokens[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && capitalized(tokens[j])) {
      auto gap = text.substr(tokens[j - 1].end, tokens[j].begin - tokens[j - 1].end);
      const auto prev = text.substr(tokens[j - 1].begin, tokens[j - 1].end - tokens[j - 1].begin);
      const bool honorific_dot = one_of(kHonorifics, prev) && gap.size() >= 2 &&
                                 gap.front() == U'.' && only_spaces(gap.substr(1));
      if (!only_spaces(gap) && !honorific_dot) break;
      ++j;
    }
    std::size_t first = i;
    const bool initial = sentence_initial(text, tokens[i].begin);
    if (initial) {
      auto w = text.substr(tokens[i].begin, tokens[i].end - tokens[i].begin);
      if (j - i > 1 && one_of(kSentenceOpeners, w)) ++first;
      // "Later Senator Ross": an honorific inside the run starts the name.
      for (std::size_t k = first + 1; k + 1 < j; ++k) {
        const auto tk = text.substr(tokens[k].begin, tokens[k].end - tokens[k].begin);
        if (one_of(kHonorifics, tk)) {
          first = k;
          break;
        }
      }
    }
    const auto head = text.substr(tokens[first].begin, tokens[first].end - tokens[first].begin);
    const bool lone = j - first == 1;
    const bool skip = (lone && (initial || one_of(kHonorifics, head)));
    if (!skip) {
      out.push_back({std::string(doc_key), tokens[first].begin, tokens[j - 1].end, "PERSON"});
    }
    i = j;
  }
  return out;
}

RewriteResult apply_person_tags(std::u32string_view text,
                                const std::vector<EntityAnnotation>& annotations,
                                const std::set<std::string>& types_to_map) {
  std::vector<const EntityAnnotation*> chosen;
  for (const auto& a : annotations) {
    if (a.begin >= a.end || a.end > text.size()) {
      throw SpanError("entity span [" + std::to_string(a.begin) + ", " + std::to_string(a.end) +
                      ") outside text of length " + std::to_string(text.size()));
    }
    if (types_to_map.contains(a.entity_type)) chosen.push_back(&a);
  }
  std::stable_sort(chosen.begin(), chosen.end(), [](const auto* a, const auto* b) {
    if (a->begin != b->begin) return a->begin < b->begin;
    return a->end > b->end;
  });

  std::vector<Replacement> reps;
  std::size_t cursor = 0;
  for (const auto* a : chosen) {
    if (a->begin < cursor) continue;
    reps.push_back({a->begin, a->end, unicode::from_utf8(a->entity_type)});
    cursor = a->end;
  }
  return apply_replacements(text, std::move(reps));
}

}  // namespace propaganda
