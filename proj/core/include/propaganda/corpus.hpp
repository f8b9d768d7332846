#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propaganda/labels.hpp"

namespace propaganda {

// Raw article text. Offsets into `text` are code point indices.
struct Article {
  std::string id;
  std::u32string text;
};

// One row of the span annotation TSV: article id, label, [begin, end).
struct Annotation {
  std::string article_id;
  TechniqueLabel label;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// The classification unit: a labeled slice of one article.
struct LabeledFragment {
  std::string article_id;
  TechniqueLabel label;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::u32string text;

  friend bool operator==(const LabeledFragment&, const LabeledFragment&) = default;
};

// Accepts only `article<digits>.txt`; returns the digits or throws FormatError.
std::string article_id_from_filename(std::string_view filename);

Article parse_article(const std::filesystem::path& path);

std::vector<Annotation> parse_annotations(const std::filesystem::path& path);
std::vector<Annotation> parse_annotations_text(std::string_view content);

// Inverse of parse_annotations_text: one `id\tlabel\tbegin\tend\n` line per row.
std::string format_annotations(std::span<const Annotation> rows);

LabeledFragment extract_fragment(const Article& article, std::size_t begin,
                                 std::size_t end, TechniqueLabel label);

struct LoadOptions {
  bool dedup = false;  // drop repeated identical annotation rows
};

std::vector<LabeledFragment> load_corpus(const std::filesystem::path& articles_dir,
                                         const std::filesystem::path& annotations_path,
                                         const LoadOptions& options = {});

// Same 4-column layout as the annotations, label column replaced by the
// prediction. Matches the task's submission format.
void write_predictions(const std::filesystem::path& path,
                       std::span<const LabeledFragment> fragments,
                       std::span<const TechniqueLabel> predicted);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace propaganda
