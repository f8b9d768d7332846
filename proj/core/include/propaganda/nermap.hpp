#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "propaganda/rewrite.hpp"

namespace propaganda {

class Gazetteer;

// Standoff entity mention, in code point offsets of the document `doc_key`.
struct EntityAnnotation {
  std::string doc_key;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string entity_type;

  friend bool operator==(const EntityAnnotation&, const EntityAnnotation&) = default;
};

// JSON-lines, one object per line: {"doc_key", "begin", "end", "type"}.
// Result is ordered by doc_key, then begin, then end. Overlaps are kept.
std::vector<EntityAnnotation> ingest_entities(const std::filesystem::path& path);
std::vector<EntityAnnotation> parse_entities(std::string_view jsonl);

// Annotations of `doc_key` lying wholly inside [begin, end), shifted so that
// `begin` becomes 0.
std::vector<EntityAnnotation> entities_within(const std::vector<EntityAnnotation>& all,
                                              std::string_view doc_key, std::size_t begin,
                                              std::size_t end);

// Capitalized-token runs typed PERSON. Runs may start with an honorific
// (Mr, Mrs, Dr, President, Senator). Sentence-initial single tokens, tag
// words and tokens covered by `exclude` matches are skipped.
std::vector<EntityAnnotation> heuristic_person_tagger(std::u32string_view text,
                                                      const Gazetteer* exclude = nullptr,
                                                      std::string_view doc_key = {});

inline const std::set<std::string>& person_only() {
  static const std::set<std::string> kTypes{"PERSON"};
  return kTypes;
}

// PERSON, NORP, ORG, GPE, LOC, FAC: persons, nationalities, organisations,
// countries, cities and locations.
const std::set<std::string>& various_entity_types();

// Replaces annotated spans whose type is in `types_to_map` with the type name
// itself as tag. Overlaps resolve leftmost-longest. Throws SpanError when a
// span falls outside `text`.
RewriteResult apply_person_tags(std::u32string_view text,
                                const std::vector<EntityAnnotation>& annotations,
                                const std::set<std::string>& types_to_map = person_only());

}  // namespace propaganda
