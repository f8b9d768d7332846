#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "propaganda/bertprep.hpp"
#include "propaganda/corpus.hpp"
#include "propaganda/eval.hpp"
#include "propaganda/features.hpp"
#include "propaganda/gazetteer.hpp"
#include "propaganda/linmod.hpp"
#include "propaganda/nermap.hpp"
#include "propaganda/textprep.hpp"

namespace propaganda {

enum class PersonSource { kNone, kHeuristic, kExternal };

std::string_view to_string(PersonSource source);
PersonSource parse_person_source(std::string_view name);

// A list to load: `name` is free-form, `tag` the replacement token.
struct ListSelection {
  std::string name;
  std::filesystem::path path;
  std::string tag;
};

// Everything needed to reproduce one ablation row.
struct ExperimentConfig {
  std::string name = "baseline";

  std::filesystem::path articles_dir;
  std::filesystem::path annotations;
  bool dedup = false;

  std::vector<ListSelection> lists;  // empty: no gazetteer mapping
  PersonSource person = PersonSource::kNone;
  std::filesystem::path entities;  // JSON-lines, for PersonSource::kExternal
  std::set<std::string> entity_types = {"PERSON"};

  bool preprocess = true;
  bool map_before_preprocess = true;
  PreprocessConfig preprocess_config;

  FeatureConfig features;
  TrainConfig train;

  // BERT export instead of the linear baseline.
  bool export_bert = false;
  std::filesystem::path bert_vocab;
  std::size_t max_len = 128;

  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
};

// Bundled lists by short name: countries, religion, politics, slogans.
ListSelection bundled_list(std::string_view name,
                           const std::filesystem::path& dir = default_list_dir());
std::vector<ListSelection> all_bundled_lists(const std::filesystem::path& dir = default_list_dir());

// Parses NAME=path:TAG.
ListSelection parse_list_argument(std::string_view arg);

// Named pipeline configurations, one per row of the ablation tables.
std::vector<std::string> named_config_names();
ExperimentConfig named_config(std::string_view name);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(std::string_view json);

// Gazetteer built from config.lists, or nullopt when none are selected.
std::optional<Gazetteer> build_gazetteer(const ExperimentConfig& config);

// Applies mapping and preprocessing stages to each fragment's text in the
// configured order.
class TextPipeline {
 public:
  explicit TextPipeline(const ExperimentConfig& config);

  std::u32string apply(const LabeledFragment& fragment) const;
  std::vector<LabeledFragment> apply_all(const std::vector<LabeledFragment>& fragments) const;

  const std::optional<Gazetteer>& gazetteer() const { return gazetteer_; }
  std::string describe() const;

 private:
  std::u32string map_stage(const LabeledFragment& fragment, std::u32string text) const;

  ExperimentConfig config_;
  std::optional<Gazetteer> gazetteer_;
  std::optional<Gazetteer> person_exclusions_;
  std::vector<EntityAnnotation> entities_;
  PreprocessConfig preprocess_;
};

struct ExperimentResult {
  ScoreReport report;
  std::vector<LabeledFragment> dev;  // original texts
  std::vector<TechniqueLabel> predictions;
  std::filesystem::path output_dir;
};

// ingest -> split -> map/ner -> preprocess -> tf-idf -> train -> predict dev
// -> score. Writes predictions.tsv, report.tsv, report.txt, model.tsv,
// vocab.tsv and manifest.json into config.output_dir. Failures are rethrown
// as StageError naming the stage.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Same as run_experiment but on fragments already in memory.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::vector<LabeledFragment>& fragments);

// BERT rows: pipeline, split, then export train/ and dev/ datasets.
std::vector<FinetuneManifest> run_bert_export(const ExperimentConfig& config);

// Config recorded in a manifest.json written by run_experiment.
ExperimentConfig config_from_manifest(const std::filesystem::path& manifest_path);

// Fragment interchange for the single-stage CLI commands.
std::string fragments_to_jsonl(const std::vector<LabeledFragment>& fragments);
std::vector<LabeledFragment> fragments_from_jsonl(std::string_view jsonl);

}  // namespace propaganda
