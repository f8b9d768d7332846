#include "propaganda/synth.hpp"

#include <array>
#include <map>

#include "propaganda/errors.hpp"
#include "propaganda/eval.hpp"
#include "propaganda/gazetteer.hpp"
#include "propaganda/rng.hpp"
#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

const std::array<std::vector<std::string>, kNumLabels>& keyword_table() {
  static const std::array<std::vector<std::string>, kNumLabels> kTable = {{
      {"outrageous", "disgusting", "vile"},            // Loaded_Language
      {"traitors", "thugs", "puppets"},                // Name_Calling,Labeling
      {"again", "repeatedly", "once more"},            // Repetition
      {"questionable", "suspicious", "unproven"},      // Doubt
      {"biggest", "unprecedented", "merely"},          // Exaggeration,Minimisation
      {"threat", "danger", "invasion"},                // Appeal_to_fear-prejudice
      {"homeland", "patriots", "flag"},                // Flag-Waving
      {"because", "therefore", "solely"},              // Causal_Oversimplification
      {"experts", "according", "scientists"},          // Appeal_to_Authority
      {"chant", "rally", "motto"},                     // Slogans
      {"either", "only choice", "no alternative"},     // Black-and-White_Fallacy
      {"whatabout", "hypocrites", "distraction"},      // Whataboutism,Straw_Men
      {"enough said", "end of story", "period"},       // Thought-terminating_Cliches
      {"everyone", "nazis", "millions agree"},         // Bandwagon,Reductio_ad_hitlerum
  }};
  return kTable;
}

// Which bundled list (by tag) supplies entities for a label.
std::u32string entity_tag_for(TechniqueLabel label) {
  switch (label) {
    case TechniqueLabel::kFlagWaving: return U"NATION";
    case TechniqueLabel::kAppealToFearPrejudice: return U"RELIGION";
    case TechniqueLabel::kNameCallingLabeling: return U"POLITICS";
    case TechniqueLabel::kSlogans: return U"SLOGANS";
    case TechniqueLabel::kAppealToAuthority: return U"PERSON";
    default: return {};
  }
}

const std::vector<std::u32string>& first_names() {
  static const std::vector<std::u32string> kNames = {
      U"Alan", U"Bertha", U"Cyril", U"Delia", U"Edmund", U"Flora", U"Gideon", U"Hester",
      U"Ivor", U"Judith", U"Lionel", U"Maud", U"Nigel", U"Odile", U"Percy", U"Rosalind"};
  return kNames;
}

const std::vector<std::u32string>& last_names() {
  static const std::vector<std::u32string> kNames = {
      U"Ashworth", U"Blakemore", U"Crandall", U"Dunmore", U"Ellery", U"Fairbanks",
      U"Greaves", U"Holloway", U"Ingram", U"Kettering", U"Lockhart", U"Merriweather"};
  return kNames;
}

std::u32string join_words(const std::vector<std::u32string>& words) {
  std::u32string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(U' ');
    out += w;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& synthetic_filler_words() {
  static const std::vector<std::string> kWords = {
      "report",  "people",  "today",   "said",    "city",     "week",    "plan",    "public",
      "local",   "council", "members", "issue",   "policy",   "budget",  "health",  "school",
      "market",  "water",   "road",    "news",    "story",    "video",   "time",    "year",
      "month",   "office",  "meeting", "vote",    "support",  "change",  "group",   "family",
      "workers", "company", "price",   "energy",  "question", "answer",  "moment",  "letter",
      "street",  "house",   "table",   "garden",  "window",   "morning", "evening", "night",
      "the",     "of",      "and",     "to",      "in",       "was",     "for",     "on",
      "with",    "that",    "this",    "we",      "they",     "it",      "is",      "by"};
  return kWords;
}

const std::vector<std::string>& synthetic_keywords(TechniqueLabel label) {
  return keyword_table()[label_index(label)];
}

SyntheticCorpus make_synthetic_corpus(std::uint64_t seed, std::size_t n_per_label,
                                      const std::filesystem::path& list_dir,
                                      const SynthOptions& options) {
  if (n_per_label == 0) throw ConfigError("n_per_label must be at least 1");
  if (options.fragments_per_article == 0) throw ConfigError("fragments_per_article must be >= 1");

  // Surface-form pools per tag, alternating entries between train and dev.
  std::map<std::u32string, std::array<std::vector<std::u32string>, 2>> pools;
  for (const auto& spec : bundled_lists(list_dir)) {
    auto entries = load_list(spec.path, spec.tag);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      pools[spec.tag][i % 2].push_back(entries[i].phrase);
    }
  }
  {
    std::size_t k = 0;
    for (const auto& first : first_names()) {
      for (const auto& last : last_names()) {
        pools[U"PERSON"][k++ % 2].push_back(U"Dr " + first + U" " + last);
      }
    }
  }

  const std::size_t n = n_per_label * kNumLabels;
  const auto split = split_2_1_indices(n, seed);
  SyntheticCorpus corpus;
  corpus.in_dev.assign(n, false);
  for (auto i : split.dev) corpus.in_dev[i] = true;

  Rng rng(seed ^ 0x5EED5EEDULL);
  const auto& filler = synthetic_filler_words();

  std::vector<std::u32string> texts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = label_from_index(i % kNumLabels);
    const auto tag = entity_tag_for(label);
    const auto& keywords = synthetic_keywords(label);

    std::vector<std::u32string> words;
    const std::size_t n_filler = 3 + rng.below(4);
    for (std::size_t k = 0; k < n_filler; ++k) {
      words.push_back(unicode::from_utf8(filler[rng.below(filler.size())]));
    }
    const bool keywordless = !tag.empty() && tag != U"PERSON" &&
                             rng.uniform() < options.keywordless_rate;
    if (!keywordless) {
      const std::size_t n_kw = 1 + rng.below(2);
      for (std::size_t k = 0; k < n_kw; ++k) {
        words.push_back(unicode::from_utf8(keywords[rng.below(keywords.size())]));
      }
    }
    rng.shuffle(std::span<std::u32string>(words));
    if (!tag.empty()) {
      const auto& pool = pools.at(tag)[corpus.in_dev[i] ? 1 : 0];
      const auto& form = pool[rng.below(pool.size())];
      (corpus.in_dev[i] ? corpus.dev_surface_forms : corpus.train_surface_forms).insert(form);
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)), form);
    }
    texts[i] = join_words(words);
  }

  for (std::size_t start = 0; start < n; start += options.fragments_per_article) {
    Article article;
    article.id = std::to_string(700000 + start / options.fragments_per_article);
    article.text = U"Synthetic article " + unicode::from_utf8(article.id) + U".\n";
    const std::size_t stop = std::min(n, start + options.fragments_per_article);
    for (std::size_t i = start; i < stop; ++i) {
      const auto label = label_from_index(i % kNumLabels);
      const std::size_t begin = article.text.size();
      article.text += texts[i];
      const std::size_t end = article.text.size();
      article.text += U".\n";
      corpus.annotations.push_back({article.id, label, begin, end});
      corpus.fragments.push_back({article.id, label, begin, end, texts[i]});
    }
    corpus.articles.push_back(std::move(article));
  }
  return corpus;
}

void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "articles", ec);
  if (ec) throw IOError("cannot create " + (out_dir / "articles").string() + ": " + ec.message());
  for (const auto& a : corpus.articles) {
    write_file(out_dir / "articles" / ("article" + a.id + ".txt"), unicode::to_utf8(a.text));
  }
  write_file(out_dir / "annotations.tsv", format_annotations(corpus.annotations));
}

}  // namespace propaganda
