#include "propaganda/experiment.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "propaganda/errors.hpp"
#include "propaganda/hash.hpp"
#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

using nlohmann::ordered_json;

template <typename Fn>
auto run_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(std::string(stage), e.what());
  }
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose) {
  return root ^ fnv1a64(purpose);
}

std::string u8(const std::u32string& s) { return unicode::to_utf8(s); }

ordered_json preprocess_to_json(const PreprocessConfig& p) {
  ordered_json j;
  j["remove_numbers"] = p.remove_numbers;
  j["remove_punctuation"] = p.remove_punctuation;
  j["remove_symbols"] = p.remove_symbols;
  j["lowercase"] = p.lowercase;
  j["replace_urls"] = p.replace_urls;
  std::vector<std::string> tags;
  for (const auto& t : p.protected_tags) tags.push_back(u8(t));
  j["protected_tags"] = tags;
  return j;
}

PreprocessConfig preprocess_from_json(const nlohmann::json& j) {
  PreprocessConfig p;
  p.remove_numbers = j.value("remove_numbers", p.remove_numbers);
  p.remove_punctuation = j.value("remove_punctuation", p.remove_punctuation);
  p.remove_symbols = j.value("remove_symbols", p.remove_symbols);
  p.lowercase = j.value("lowercase", p.lowercase);
  p.replace_urls = j.value("replace_urls", p.replace_urls);
  if (j.contains("protected_tags")) {
    p.protected_tags.clear();
    for (const auto& t : j.at("protected_tags")) {
      p.protected_tags.insert(unicode::from_utf8(t.get<std::string>()));
    }
  }
  return p;
}

std::string list_checksum(const ListSelection& list) {
  return hex64(fnv1a64(read_file(list.path)));
}

}  // namespace

std::string_view to_string(PersonSource source) {
  switch (source) {
    case PersonSource::kNone: return "none";
    case PersonSource::kHeuristic: return "heuristic";
    case PersonSource::kExternal: return "external";
  }
  return "none";
}

PersonSource parse_person_source(std::string_view name) {
  if (name == "none") return PersonSource::kNone;
  if (name == "heuristic") return PersonSource::kHeuristic;
  if (name == "external") return PersonSource::kExternal;
  throw ConfigError("unknown person source '" + std::string(name) + "'");
}

ListSelection bundled_list(std::string_view name, const std::filesystem::path& dir) {
  for (const auto& spec : bundled_lists(dir)) {
    if (spec.name == name) return {spec.name, spec.path, u8(spec.tag)};
  }
  throw ConfigError("unknown bundled list '" + std::string(name) +
                    "' (expected countries, religion, politics or slogans)");
}

std::vector<ListSelection> all_bundled_lists(const std::filesystem::path& dir) {
  std::vector<ListSelection> out;
  for (const auto& spec : bundled_lists(dir)) out.push_back({spec.name, spec.path, u8(spec.tag)});
  return out;
}

ListSelection parse_list_argument(std::string_view arg) {
  const auto eq = arg.find('=');
  const auto colon = arg.rfind(':');
  if (eq == std::string_view::npos || colon == std::string_view::npos || colon < eq ||
      eq == 0 || colon == eq + 1 || colon + 1 == arg.size()) {
    throw ConfigError("list argument '" + std::string(arg) + "' is not NAME=path:TAG");
  }
  return {std::string(arg.substr(0, eq)), std::string(arg.substr(eq + 1, colon - eq - 1)),
          std::string(arg.substr(colon + 1))};
}

std::vector<std::string> named_config_names() {
  return {"baseline",
          "nation",
          "religion",
          "politics",
          "slogans",
          "combined-lists",
          "person",
          "various-entities",
          "bert-raw",
          "bert-preprocessed",
          "bert-various-entities",
          "bert-entity-person",
          "bert-entity-person-preprocessed",
          "bert-lists",
          "bert-lists-preprocessed"};
}

ExperimentConfig named_config(std::string_view name) {
  ExperimentConfig c;
  c.name = std::string(name);
  if (name == "baseline") return c;
  if (name == "nation") return c.lists = {bundled_list("countries")}, c;
  if (name == "religion") return c.lists = {bundled_list("religion")}, c;
  if (name == "politics") return c.lists = {bundled_list("politics")}, c;
  if (name == "slogans") return c.lists = {bundled_list("slogans")}, c;
  if (name == "combined-lists") return c.lists = all_bundled_lists(), c;
  if (name == "person") {
    c.person = PersonSource::kHeuristic;
    return c;
  }
  if (name == "various-entities") {
    c.person = PersonSource::kHeuristic;
    c.entity_types = various_entity_types();
    return c;
  }
  if (name.starts_with("bert-")) {
    c.export_bert = true;
    c.preprocess = name.ends_with("-preprocessed") || name == "bert-preprocessed";
    if (name == "bert-raw" || name == "bert-preprocessed") return c;
    if (name == "bert-various-entities") {
      c.person = PersonSource::kHeuristic;
      c.entity_types = various_entity_types();
      return c;
    }
    if (name.starts_with("bert-entity-person")) {
      c.person = PersonSource::kHeuristic;
      return c;
    }
    if (name.starts_with("bert-lists")) {
      c.lists = all_bundled_lists();
      return c;
    }
  }
  throw ConfigError("unknown named config '" + std::string(name) + "'");
}

std::string config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["name"] = c.name;
  j["articles_dir"] = c.articles_dir.string();
  j["annotations"] = c.annotations.string();
  j["dedup"] = c.dedup;
  auto lists = ordered_json::array();
  for (const auto& l : c.lists) {
    lists.push_back(ordered_json{{"name", l.name}, {"path", l.path.string()}, {"tag", l.tag}});
  }
  j["lists"] = lists;
  j["person"] = to_string(c.person);
  j["entities"] = c.entities.string();
  j["entity_types"] = std::vector<std::string>(c.entity_types.begin(), c.entity_types.end());
  j["preprocess"] = c.preprocess;
  j["map_before_preprocess"] = c.map_before_preprocess;
  j["preprocess_config"] = preprocess_to_json(c.preprocess_config);
  j["features"] = ordered_json{{"ngram_min", c.features.ngram_min},
                               {"ngram_max", c.features.ngram_max}};
  j["train"] = ordered_json{{"algorithm", to_string(c.train.algorithm)},
                            {"ridge_alpha", c.train.ridge_alpha},
                            {"cg_tolerance", c.train.cg_tolerance},
                            {"cg_max_iterations", c.train.cg_max_iterations},
                            {"sgd_epochs", c.train.sgd_epochs},
                            {"sgd_eta0", c.train.sgd_eta0},
                            {"sgd_lambda", c.train.sgd_lambda},
                            {"fit_intercept", c.train.fit_intercept}};
  j["export_bert"] = c.export_bert;
  j["bert_vocab"] = c.bert_vocab.string();
  j["max_len"] = c.max_len;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir.string();
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    // A named base config may be refined by the remaining keys.
    ExperimentConfig c = j.contains("base") ? named_config(j.at("base").get<std::string>())
                                            : ExperimentConfig{};
    c.name = j.value("name", c.name);
    c.articles_dir = j.value("articles_dir", c.articles_dir.string());
    c.annotations = j.value("annotations", c.annotations.string());
    c.dedup = j.value("dedup", c.dedup);
    if (j.contains("lists")) {
      c.lists.clear();
      for (const auto& l : j.at("lists")) {
        if (l.is_string()) {
          c.lists.push_back(bundled_list(l.get<std::string>()));
        } else {
          c.lists.push_back({l.at("name").get<std::string>(), l.at("path").get<std::string>(),
                             l.at("tag").get<std::string>()});
        }
      }
    }
    if (j.contains("person")) c.person = parse_person_source(j.at("person").get<std::string>());
    c.entities = j.value("entities", c.entities.string());
    if (j.contains("entity_types")) {
      c.entity_types.clear();
      for (const auto& t : j.at("entity_types")) c.entity_types.insert(t.get<std::string>());
    }
    c.preprocess = j.value("preprocess", c.preprocess);
    c.map_before_preprocess = j.value("map_before_preprocess", c.map_before_preprocess);
    if (j.contains("preprocess_config")) c.preprocess_config = preprocess_from_json(j.at("preprocess_config"));
    if (j.contains("features")) {
      const auto& f = j.at("features");
      c.features.ngram_min = f.value("ngram_min", c.features.ngram_min);
      c.features.ngram_max = f.value("ngram_max", c.features.ngram_max);
    }
    if (j.contains("train")) {
      const auto& t = j.at("train");
      if (t.contains("algorithm")) c.train.algorithm = parse_algorithm(t.at("algorithm").get<std::string>());
      c.train.ridge_alpha = t.value("ridge_alpha", c.train.ridge_alpha);
      c.train.cg_tolerance = t.value("cg_tolerance", c.train.cg_tolerance);
      c.train.cg_max_iterations = t.value("cg_max_iterations", c.train.cg_max_iterations);
      c.train.sgd_epochs = t.value("sgd_epochs", c.train.sgd_epochs);
      c.train.sgd_eta0 = t.value("sgd_eta0", c.train.sgd_eta0);
      c.train.sgd_lambda = t.value("sgd_lambda", c.train.sgd_lambda);
      c.train.fit_intercept = t.value("fit_intercept", c.train.fit_intercept);
    }
    c.export_bert = j.value("export_bert", c.export_bert);
    c.bert_vocab = j.value("bert_vocab", c.bert_vocab.string());
    c.max_len = j.value("max_len", c.max_len);
    c.seed = j.value("seed", c.seed);
    c.output_dir = j.value("output_dir", c.output_dir.string());
    if (c.features.ngram_min == 0 || c.features.ngram_max < c.features.ngram_min) {
      throw ConfigError("invalid n-gram range");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
}

std::optional<Gazetteer> build_gazetteer(const ExperimentConfig& config) {
  if (config.lists.empty()) return std::nullopt;
  std::vector<GazetteerEntry> entries;
  for (const auto& l : config.lists) {
    auto part = load_list(l.path, unicode::from_utf8(l.tag));
    entries.insert(entries.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  return Gazetteer(std::move(entries));
}

TextPipeline::TextPipeline(const ExperimentConfig& config)
    : config_(config), gazetteer_(build_gazetteer(config)), preprocess_(config.preprocess_config) {
  if (config.person == PersonSource::kExternal) {
    if (config.entities.empty()) throw ConfigError("external person mapping needs an entities file");
    entities_ = ingest_entities(config.entities);
  }
  if (config.person == PersonSource::kHeuristic) {
    ExperimentConfig all = config;
    all.lists = all_bundled_lists();
    person_exclusions_ = build_gazetteer(all);
  }
  if (config.person != PersonSource::kNone) {
    for (const auto& t : config.entity_types) preprocess_.protected_tags.insert(unicode::from_utf8(t));
  }
  for (const auto& l : config.lists) preprocess_.protected_tags.insert(unicode::from_utf8(l.tag));
}

std::u32string TextPipeline::map_stage(const LabeledFragment&, std::u32string text) const {
  if (gazetteer_) text = gazetteer_->map(text).text;
  if (config_.person == PersonSource::kHeuristic) {
    const auto people = heuristic_person_tagger(
        text, person_exclusions_ ? &*person_exclusions_ : nullptr);
    text = apply_person_tags(text, people, config_.entity_types).text;
  }
  return text;
}

std::u32string TextPipeline::apply(const LabeledFragment& fragment) const {
  std::u32string text = fragment.text;
  if (config_.person == PersonSource::kExternal) {
    // Standoff offsets refer to the raw article, so this runs first.
    const auto mentions = entities_within(entities_, fragment.article_id, fragment.begin, fragment.end);
    text = apply_person_tags(text, mentions, config_.entity_types).text;
  }
  if (config_.map_before_preprocess) {
    text = map_stage(fragment, std::move(text));
    if (config_.preprocess) text = preprocess(text, preprocess_);
  } else {
    if (config_.preprocess) text = preprocess(text, preprocess_);
    text = map_stage(fragment, std::move(text));
  }
  return text;
}

std::vector<LabeledFragment> TextPipeline::apply_all(const std::vector<LabeledFragment>& fragments) const {
  std::vector<LabeledFragment> out = fragments;
  for (auto& f : out) f.text = apply(f);
  return out;
}

std::string TextPipeline::describe() const {
  std::vector<std::string> stages;
  if (config_.person == PersonSource::kExternal) stages.push_back("ner(external)");
  std::vector<std::string> mapping;
  if (gazetteer_) {
    std::string names;
    for (const auto& l : config_.lists) names += (names.empty() ? "" : ",") + l.name;
    mapping.push_back("gazetteer(" + names + ")");
  }
  if (config_.person == PersonSource::kHeuristic) mapping.push_back("ner(heuristic)");
  if (config_.map_before_preprocess) {
    stages.insert(stages.end(), mapping.begin(), mapping.end());
    if (config_.preprocess) stages.push_back("preprocess");
  } else {
    if (config_.preprocess) stages.push_back("preprocess");
    stages.insert(stages.end(), mapping.begin(), mapping.end());
  }
  std::string out;
  for (const auto& s : stages) out += (out.empty() ? "" : " -> ") + s;
  return out.empty() ? "raw" : out;
}

namespace {

ordered_json manifest_json(const ExperimentConfig& config, std::size_t n, std::size_t n_train,
                           std::size_t n_dev, const std::string& pipeline) {
  ordered_json m;
  m["format_version"] = 1;
  m["config"] = ordered_json::parse(config_to_json(config));
  m["seed"] = config.seed;
  m["pipeline"] = pipeline;
  ordered_json sums = ordered_json::object();
  for (const auto& l : config.lists) sums[l.name] = list_checksum(l);
  m["list_checksums"] = sums;
  if (!config.entities.empty() && config.person == PersonSource::kExternal) {
    m["entities_checksum"] = hex64(fnv1a64(read_file(config.entities)));
  }
  m["split"] = "internal 2/3 train, 1/3 dev";
  m["n_fragments"] = n;
  m["n_train"] = n_train;
  m["n_dev"] = n_dev;
  return m;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IOError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::vector<LabeledFragment>& fragments) {
  const auto split = run_stage("split", [&] { return split_2_1_indices(fragments.size(), config.seed); });

  const TextPipeline pipeline = run_stage("map", [&] { return TextPipeline(config); });
  const auto processed = run_stage("preprocess", [&] { return pipeline.apply_all(fragments); });

  std::vector<std::u32string> train_text, dev_text;
  std::vector<TechniqueLabel> train_y, dev_y;
  ExperimentResult result;
  for (auto i : split.train) {
    train_text.push_back(processed[i].text);
    train_y.push_back(processed[i].label);
  }
  for (auto i : split.dev) {
    dev_text.push_back(processed[i].text);
    dev_y.push_back(processed[i].label);
    result.dev.push_back(fragments[i]);
  }

  Vocabulary vocab;
  SparseMatrix x_train, x_dev;
  run_stage("features", [&] {
    const auto train_docs = analyze(train_text, config.features);
    vocab = fit_vocab(train_docs);
    x_train = tfidf_transform(train_docs, vocab);
    x_dev = tfidf_transform(analyze(dev_text, config.features), vocab);
  });

  TrainConfig train_config = config.train;
  train_config.seed = derive_seed(config.seed, "train");
  const auto model = run_stage("train", [&] { return train(x_train, train_y, train_config); });
  result.predictions = run_stage("predict", [&] { return predict(model, x_dev); });
  result.report = run_stage("evaluate", [&] { return micro_f1(dev_y, result.predictions); });

  result.output_dir = config.output_dir;
  run_stage("write", [&] {
    ensure_dir(config.output_dir);
    write_predictions(config.output_dir / "predictions.tsv", result.dev, result.predictions);
    write_file(config.output_dir / "report.tsv", report_tsv(result.report));
    RunMetadata meta{config.name,
                     "internal 1/3 dev split, seed " + std::to_string(config.seed),
                     {{"pipeline", pipeline.describe()},
                      {"algorithm", std::string(to_string(config.train.algorithm))}}};
    write_file(config.output_dir / "report.txt", report_text(meta, result.report));
    write_file(config.output_dir / "model.tsv", model.to_tsv());
    write_file(config.output_dir / "vocab.tsv", vocab.to_tsv());
    write_file(config.output_dir / "manifest.json",
               manifest_json(config, fragments.size(), split.train.size(), split.dev.size(),
                             pipeline.describe())
                       .dump(2) +
                   "\n");
  });
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto fragments = run_stage("ingest", [&] {
    return load_corpus(config.articles_dir, config.annotations, LoadOptions{config.dedup});
  });
  return run_experiment(config, fragments);
}

std::vector<FinetuneManifest> run_bert_export(const ExperimentConfig& config) {
  const auto fragments = run_stage("ingest", [&] {
    return load_corpus(config.articles_dir, config.annotations, LoadOptions{config.dedup});
  });
  const auto split = run_stage("split", [&] { return split_2_1_indices(fragments.size(), config.seed); });
  const TextPipeline pipeline = run_stage("map", [&] { return TextPipeline(config); });
  const auto processed = run_stage("preprocess", [&] { return pipeline.apply_all(fragments); });
  const auto vocab = run_stage("export", [&] {
    if (config.bert_vocab.empty()) throw ConfigError("export needs a WordPiece vocabulary file");
    return WordPieceVocab::from_file(config.bert_vocab);
  });

  std::vector<FinetuneManifest> manifests;
  run_stage("export", [&] {
    for (const auto& [part, idx] : {std::pair{"train", &split.train}, std::pair{"dev", &split.dev}}) {
      std::vector<LabeledFragment> subset;
      for (auto i : *idx) subset.push_back(processed[i]);
      FinetuneManifest m;
      m.pipeline = pipeline.describe();
      manifests.push_back(export_dataset(subset, vocab, config.max_len, config.output_dir / part, m));
    }
    write_file(config.output_dir / "manifest.json",
               manifest_json(config, fragments.size(), split.train.size(), split.dev.size(),
                             pipeline.describe())
                       .dump(2) +
                   "\n");
  });
  return manifests;
}

ExperimentConfig config_from_manifest(const std::filesystem::path& manifest_path) {
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(manifest_path.string() + ": " + e.what());
  }
  if (!m.contains("config")) throw FormatError(manifest_path.string() + ": no config recorded");
  return config_from_json(m.at("config").dump());
}

std::string fragments_to_jsonl(const std::vector<LabeledFragment>& fragments) {
  std::string out;
  for (const auto& f : fragments) {
    ordered_json j;
    j["article_id"] = f.article_id;
    j["label"] = std::string(to_string(f.label));
    j["begin"] = f.begin;
    j["end"] = f.end;
    j["text"] = u8(f.text);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledFragment> fragments_from_jsonl(std::string_view jsonl) {
  std::vector<LabeledFragment> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < jsonl.size()) {
    auto eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    auto line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      LabeledFragment f;
      f.article_id = j.at("article_id").get<std::string>();
      f.label = parse_label(j.at("label").get<std::string>());
      f.begin = j.at("begin").get<std::size_t>();
      f.end = j.at("end").get<std::size_t>();
      f.text = unicode::from_utf8(j.at("text").get<std::string>());
      out.push_back(std::move(f));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad fragment record: ") + e.what(), line_no);
    }
  }
  return out;
}

}  // namespace propaganda
