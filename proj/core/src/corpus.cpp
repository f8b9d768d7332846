#include "propaganda/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "propaganda/errors.hpp"
#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::size_t parse_offset(std::string_view field, std::size_t line) {
  std::size_t value = 0;
  if (!all_digits(field)) {
    throw FormatError("offset '" + std::string(field) + "' is not a non-negative integer", line);
  }
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("offset '" + std::string(field) + "' out of range", line);
  }
  return value;
}

}  // namespace

MissingArticleError::MissingArticleError(std::vector<std::string> ids)
    : Error("missing article(s): " + join_ids(ids)), ids_(std::move(ids)) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IOError("read failed: " + path.string());
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IOError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IOError("write failed: " + path.string());
}

std::string article_id_from_filename(std::string_view filename) {
  constexpr std::string_view kPrefix = "article";
  constexpr std::string_view kSuffix = ".txt";
  if (filename.size() > kPrefix.size() + kSuffix.size() && filename.starts_with(kPrefix) &&
      filename.ends_with(kSuffix)) {
    auto digits = filename.substr(kPrefix.size(),
                                  filename.size() - kPrefix.size() - kSuffix.size());
    if (all_digits(digits)) return std::string(digits);
  }
  throw FormatError("article file name '" + std::string(filename) +
                    "' does not match article<digits>.txt");
}

Article parse_article(const std::filesystem::path& path) {
  Article article;
  article.id = article_id_from_filename(path.filename().string());
  try {
    article.text = unicode::from_utf8(read_file(path));
  } catch (const EncodingError& e) {
    throw EncodingError(path.string() + ": " + e.what());
  }
  return article;
}

std::vector<Annotation> parse_annotations_text(std::string_view content) {
  std::vector<Annotation> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() != 4) {
      throw FormatError("expected 4 tab-separated columns, found " + std::to_string(cols.size()),
                        line_no);
    }
    if (cols[0].empty()) throw FormatError("empty article id", line_no);

    Annotation row;
    row.article_id = std::string(cols[0]);
    auto label = try_parse_label(cols[1]);
    if (!label) {
      throw LabelError("line " + std::to_string(line_no) + ": unknown technique label '" +
                       std::string(cols[1]) + "'");
    }
    row.label = *label;
    row.begin = parse_offset(cols[2], line_no);
    row.end = parse_offset(cols[3], line_no);
    if (row.begin >= row.end) {
      throw SpanError("line " + std::to_string(line_no) + ": article " + row.article_id +
                      " span [" + std::to_string(row.begin) + ", " + std::to_string(row.end) +
                      ") is empty or inverted");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Annotation> parse_annotations(const std::filesystem::path& path) {
  return parse_annotations_text(read_file(path));
}

std::string format_annotations(std::span<const Annotation> rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.article_id;
    out += '\t';
    out += to_string(row.label);
    out += '\t';
    out += std::to_string(row.begin);
    out += '\t';
    out += std::to_string(row.end);
    out += '\n';
  }
  return out;
}

LabeledFragment extract_fragment(const Article& article, std::size_t begin, std::size_t end,
                                 TechniqueLabel label) {
  if (begin >= end || end > article.text.size()) {
    throw SpanError("article " + article.id + ": span [" + std::to_string(begin) + ", " +
                    std::to_string(end) + ") outside text of length " +
                    std::to_string(article.text.size()));
  }
  return LabeledFragment{article.id, label, begin, end, article.text.substr(begin, end - begin)};
}

std::vector<LabeledFragment> load_corpus(const std::filesystem::path& articles_dir,
                                         const std::filesystem::path& annotations_path,
                                         const LoadOptions& options) {
  auto rows = parse_annotations(annotations_path);

  if (options.dedup) {
    std::set<std::tuple<std::string, std::size_t, std::size_t, std::size_t>> seen;
    std::vector<Annotation> unique;
    for (auto& row : rows) {
      if (seen.emplace(row.article_id, label_index(row.label), row.begin, row.end).second) {
        unique.push_back(std::move(row));
      }
    }
    rows = std::move(unique);
  }

  std::vector<std::string> missing;
  std::map<std::string, Article> articles;
  for (const auto& row : rows) {
    if (articles.contains(row.article_id)) continue;
    const auto path = articles_dir / ("article" + row.article_id + ".txt");
    if (!std::filesystem::exists(path)) {
      if (std::find(missing.begin(), missing.end(), row.article_id) == missing.end()) {
        missing.push_back(row.article_id);
      }
      continue;
    }
    articles.emplace(row.article_id, parse_article(path));
  }
  if (!missing.empty()) throw MissingArticleError(std::move(missing));

  std::vector<LabeledFragment> fragments;
  fragments.reserve(rows.size());
  for (const auto& row : rows) {
    fragments.push_back(extract_fragment(articles.at(row.article_id), row.begin, row.end, row.label));
  }
  return fragments;
}

void write_predictions(const std::filesystem::path& path,
                       std::span<const LabeledFragment> fragments,
                       std::span<const TechniqueLabel> predicted) {
  if (fragments.size() != predicted.size()) {
    throw ShapeError("predictions: " + std::to_string(fragments.size()) + " fragments but " +
                     std::to_string(predicted.size()) + " labels");
  }
  std::vector<Annotation> rows;
  rows.reserve(fragments.size());
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    rows.push_back({fragments[i].article_id, predicted[i], fragments[i].begin, fragments[i].end});
  }
  write_file(path, format_annotations(rows));
}

}  // namespace propaganda
