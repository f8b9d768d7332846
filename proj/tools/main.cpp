// Command line front end: single stages (ingest, map, preprocess, train,
// predict, evaluate, export-bert), the composite `run`, and `synth`.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "propaganda/bertprep.hpp"
#include "propaganda/corpus.hpp"
#include "propaganda/errors.hpp"
#include "propaganda/eval.hpp"
#include "propaganda/experiment.hpp"
#include "propaganda/features.hpp"
#include "propaganda/gazetteer.hpp"
#include "propaganda/linmod.hpp"
#include "propaganda/nermap.hpp"
#include "propaganda/synth.hpp"
#include "propaganda/textprep.hpp"
#include "propaganda/unicode.hpp"

namespace fs = std::filesystem;
using namespace propaganda;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return read_file(path);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Options shared by `map` and `run`.
struct MappingOptions {
  std::string lists_csv;
  std::vector<std::string> list_args;
  std::string person;
  std::string entities;
  std::string entity_types;

  void add_to(CLI::App* app) {
    app->add_option("--lists", lists_csv,
                    "Bundled lists to apply: countries,religion,politics,slogans or 'all'");
    app->add_option("--list", list_args, "Extra list as NAME=path:TAG (repeatable)");
    app->add_option("--person", person, "Person mapping: none, heuristic or external");
    app->add_option("--entities", entities, "JSON-lines entity file (implies --person external)");
    app->add_option("--entity-types", entity_types, "Entity types to replace, comma separated");
  }

  void apply(ExperimentConfig& c) const {
    if (!lists_csv.empty()) {
      c.lists.clear();
      for (const auto& name : split_csv(lists_csv)) {
        if (name == "all") {
          auto all = all_bundled_lists();
          c.lists.insert(c.lists.end(), all.begin(), all.end());
        } else if (name != "none") {
          c.lists.push_back(bundled_list(name));
        }
      }
    }
    for (const auto& arg : list_args) c.lists.push_back(parse_list_argument(arg));
    if (!entities.empty()) {
      c.entities = entities;
      c.person = PersonSource::kExternal;
    }
    if (!person.empty()) c.person = parse_person_source(person);
    if (!entity_types.empty()) {
      auto types = split_csv(entity_types);
      c.entity_types = std::set<std::string>(types.begin(), types.end());
    }
  }
};

struct PreprocessOptions {
  bool no_lowercase = false;
  bool keep_numbers = false;
  bool keep_punctuation = false;
  bool keep_symbols = false;
  bool no_urls = false;
  std::vector<std::string> protect;

  void add_to(CLI::App* app) {
    app->add_flag("--no-lowercase", no_lowercase, "Keep letter case");
    app->add_flag("--keep-numbers", keep_numbers, "Do not remove digits");
    app->add_flag("--keep-punctuation", keep_punctuation, "Do not remove punctuation");
    app->add_flag("--keep-symbols", keep_symbols, "Do not remove symbols");
    app->add_flag("--no-urls", no_urls, "Do not normalize URLs");
    app->add_option("--protect", protect, "Additional protected tag (repeatable)");
  }

  void apply(PreprocessConfig& p) const {
    if (no_lowercase) p.lowercase = false;
    if (keep_numbers) p.remove_numbers = false;
    if (keep_punctuation) p.remove_punctuation = false;
    if (keep_symbols) p.remove_symbols = false;
    if (no_urls) p.replace_urls = false;
    for (const auto& t : protect) p.protected_tags.insert(unicode::from_utf8(t));
  }
};

std::vector<LabeledFragment> fragments_or_text(const std::string& in, const std::string& text) {
  if (!text.empty()) {
    return {LabeledFragment{"-", TechniqueLabel::kLoadedLanguage, 0, 0, unicode::from_utf8(text)}};
  }
  return fragments_from_jsonl(read_input(in));
}

std::string texts_or_jsonl(const std::vector<LabeledFragment>& fragments, bool plain) {
  if (!plain) return fragments_to_jsonl(fragments);
  std::string out;
  for (const auto& f : fragments) out += unicode::to_utf8(f.text) + "\n";
  return out;
}

void print_label_counts(const std::vector<LabeledFragment>& fragments) {
  std::map<TechniqueLabel, std::size_t> counts;
  for (const auto& f : fragments) ++counts[f.label];
  std::cerr << fragments.size() << " fragments\n";
  for (const auto& [label, n] : counts) std::cerr << "  " << to_string(label) << "\t" << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Propaganda technique classification pipeline"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load articles and span annotations into fragments");
  std::string articles, annotations, out;
  bool dedup = false;
  ingest->add_option("--articles", articles, "Directory of article<id>.txt files")->required();
  ingest->add_option("--annotations", annotations, "4-column annotation TSV")->required();
  ingest->add_flag("--dedup", dedup, "Drop repeated identical annotation rows");
  ingest->add_option("-o,--out", out, "Output fragments JSON-lines (default stdout)");

  // map
  auto* map_cmd = app.add_subcommand("map", "Replace gazetteer and entity mentions with tags");
  std::string in, text, audit;
  bool plain = false;
  MappingOptions mapping;
  map_cmd->add_option("--in", in, "Fragments JSON-lines (default stdin)");
  map_cmd->add_option("--text", text, "Map a single string instead");
  map_cmd->add_option("--audit", audit, "Write replacements as begin<TAB>end<TAB>tag");
  map_cmd->add_flag("--plain", plain, "Print only the rewritten texts");
  map_cmd->add_option("-o,--out", out, "Output (default stdout)");
  mapping.add_to(map_cmd);

  // preprocess
  auto* prep_cmd = app.add_subcommand("preprocess", "Strip numbers, punctuation, symbols; lowercase");
  PreprocessOptions prep;
  prep_cmd->add_option("--in", in, "Fragments JSON-lines (default stdin)");
  prep_cmd->add_option("--text", text, "Preprocess a single string instead");
  prep_cmd->add_flag("--plain", plain, "Print only the processed texts");
  prep_cmd->add_option("-o,--out", out, "Output (default stdout)");
  prep.add_to(prep_cmd);

  // train
  auto* train_cmd = app.add_subcommand("train", "Fit TF-IDF and a linear classifier");
  std::string fragments_path, model_dir, algorithm = "ridge";
  TrainConfig train_config;
  FeatureConfig features;
  train_cmd->add_option("--fragments", fragments_path, "Training fragments JSON-lines")->required();
  train_cmd->add_option("--model-dir", model_dir, "Output directory")->required();
  train_cmd->add_option("--algorithm", algorithm, "ridge or sgd_hinge");
  train_cmd->add_option("--alpha", train_config.ridge_alpha, "Ridge L2 strength");
  train_cmd->add_option("--epochs", train_config.sgd_epochs, "SGD epochs");
  train_cmd->add_option("--eta0", train_config.sgd_eta0, "SGD initial learning rate");
  train_cmd->add_option("--lambda", train_config.sgd_lambda, "SGD L2 strength");
  train_cmd->add_option("--seed", train_config.seed, "SGD shuffle seed");
  train_cmd->add_option("--ngram-max", features.ngram_max, "Largest n-gram length");

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "Label fragments with a trained model");
  predict_cmd->add_option("--model-dir", model_dir, "Directory written by `train`")->required();
  predict_cmd->add_option("--fragments", fragments_path, "Fragments JSON-lines")->required();
  predict_cmd->add_option("-o,--out", out, "Predictions TSV (default stdout)");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against gold annotations");
  std::string gold, pred, report_out;
  eval_cmd->add_option("--gold", gold, "Gold annotation TSV")->required();
  eval_cmd->add_option("--pred", pred, "Prediction TSV")->required();
  eval_cmd->add_option("--report-tsv", report_out, "Also write the report TSV here");

  // export-bert
  auto* export_cmd = app.add_subcommand("export-bert", "Write WordPiece-encoded fine-tuning data");
  std::string vocab_path, out_dir, checkpoint = "bert-base-uncased";
  std::size_t max_len = 128;
  bool cased = false;
  export_cmd->add_option("--fragments", fragments_path, "Fragments JSON-lines")->required();
  export_cmd->add_option("--vocab", vocab_path, "WordPiece vocab, one token per line")->required();
  export_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
  export_cmd->add_option("--max-len", max_len, "Sequence length including [CLS]/[SEP]");
  export_cmd->add_option("--checkpoint", checkpoint, "Checkpoint name recorded in the manifest");
  export_cmd->add_flag("--cased", cased, "Do not lowercase before WordPiece");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a full experiment configuration");
  std::string config_path, named, manifest_path;
  std::string run_articles, run_annotations, run_out, run_vocab, run_algorithm;
  std::optional<std::uint64_t> run_seed;
  std::optional<double> run_alpha;
  std::optional<std::size_t> run_max_len;
  bool no_preprocess = false, preprocess_first = false, run_dedup = false;
  MappingOptions run_mapping;
  PreprocessOptions run_prep;
  run_cmd->add_option("--config", config_path, "JSON experiment config");
  run_cmd->add_option("--named", named, "Named config (see `configs`)");
  run_cmd->add_option("--manifest", manifest_path, "Replay the config recorded in a manifest.json");
  run_cmd->add_option("--articles", run_articles, "Article directory");
  run_cmd->add_option("--annotations", run_annotations, "Annotation TSV");
  run_cmd->add_option("--out-dir", run_out, "Output directory");
  run_cmd->add_option("--seed", run_seed, "Root seed");
  run_cmd->add_option("--algorithm", run_algorithm, "ridge or sgd_hinge");
  run_cmd->add_option("--alpha", run_alpha, "Ridge L2 strength");
  run_cmd->add_option("--vocab", run_vocab, "WordPiece vocab (bert-* configs)");
  run_cmd->add_option("--max-len", run_max_len, "Sequence length (bert-* configs)");
  run_cmd->add_flag("--no-preprocess", no_preprocess, "Skip preprocessing");
  run_cmd->add_flag("--preprocess-first", preprocess_first, "Preprocess before mapping");
  run_cmd->add_flag("--dedup", run_dedup, "Drop repeated identical annotation rows");
  run_mapping.add_to(run_cmd);
  run_prep.add_to(run_cmd);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate the synthetic 14-label corpus");
  std::uint64_t synth_seed = 1;
  std::size_t n_per_label = 60;
  synth_cmd->add_option("--seed", synth_seed, "Seed (use the same seed for `run`)");
  synth_cmd->add_option("--n-per-label", n_per_label, "Fragments per label");
  synth_cmd->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* configs_cmd = app.add_subcommand("configs", "List named experiment configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) {
      const auto fragments = load_corpus(articles, annotations, LoadOptions{dedup});
      print_label_counts(fragments);
      write_output(out, fragments_to_jsonl(fragments));
    } else if (*map_cmd) {
      ExperimentConfig c;
      c.preprocess = false;
      mapping.apply(c);
      auto fragments = fragments_or_text(in, text);
      std::string audit_lines;
      if (c.person == PersonSource::kNone) {
        // Plain gazetteer pass keeps replacement offsets for the audit file.
        const auto gaz = build_gazetteer(c);
        for (auto& f : fragments) {
          if (!gaz) break;
          const auto result = gaz->map(f.text);
          if (!result.replacements.empty() && !text.empty()) {
            for (const auto& r : result.replacements) {
              audit_lines += std::to_string(r.begin) + "\t" + std::to_string(r.end) + "\t" +
                             unicode::to_utf8(r.tag) + "\n";
            }
          } else if (!result.replacements.empty()) {
            audit_lines += "# " + f.article_id + "\n";
            for (const auto& r : result.replacements) {
              audit_lines += std::to_string(f.begin + r.begin) + "\t" +
                             std::to_string(f.begin + r.end) + "\t" + unicode::to_utf8(r.tag) + "\n";
            }
          }
          f.text = result.text;
        }
      } else {
        fragments = TextPipeline(c).apply_all(fragments);
      }
      if (!audit.empty()) write_file(audit, audit_lines);
      write_output(out, texts_or_jsonl(fragments, plain || !text.empty()));
    } else if (*prep_cmd) {
      PreprocessConfig p;
      prep.apply(p);
      auto fragments = fragments_or_text(in, text);
      for (auto& f : fragments) f.text = preprocess(f.text, p);
      write_output(out, texts_or_jsonl(fragments, plain || !text.empty()));
    } else if (*train_cmd) {
      train_config.algorithm = parse_algorithm(algorithm);
      const auto fragments = fragments_from_jsonl(read_file(fragments_path));
      std::vector<std::u32string> texts;
      std::vector<TechniqueLabel> y;
      for (const auto& f : fragments) {
        texts.push_back(f.text);
        y.push_back(f.label);
      }
      const auto docs = analyze(texts, features);
      const auto vocab = fit_vocab(docs);
      const auto model = train(tfidf_transform(docs, vocab), y, train_config);
      fs::create_directories(model_dir);
      write_file(fs::path(model_dir) / "vocab.tsv", vocab.to_tsv());
      write_file(fs::path(model_dir) / "model.tsv", model.to_tsv());
      write_file(fs::path(model_dir) / "features.json",
                 nlohmann::json{{"ngram_min", features.ngram_min},
                                {"ngram_max", features.ngram_max}}.dump() + "\n");
      std::cerr << "trained " << to_string(model.algorithm) << " on " << fragments.size()
                << " fragments, " << vocab.size() << " terms, " << model.labels.size() << " labels\n";
    } else if (*predict_cmd) {
      const fs::path dir(model_dir);
      const auto vocab = Vocabulary::from_tsv(read_file(dir / "vocab.tsv"));
      const auto model = LinearModel::from_tsv(read_file(dir / "model.tsv"));
      FeatureConfig fc;
      if (fs::exists(dir / "features.json")) {
        const auto j = nlohmann::json::parse(read_file(dir / "features.json"));
        fc.ngram_min = j.value("ngram_min", fc.ngram_min);
        fc.ngram_max = j.value("ngram_max", fc.ngram_max);
      }
      const auto fragments = fragments_from_jsonl(read_file(fragments_path));
      std::vector<std::u32string> texts;
      for (const auto& f : fragments) texts.push_back(f.text);
      const auto labels = predict(model, tfidf_transform(analyze(texts, fc), vocab));
      std::vector<Annotation> rows;
      for (std::size_t i = 0; i < fragments.size(); ++i) {
        rows.push_back({fragments[i].article_id, labels[i], fragments[i].begin, fragments[i].end});
      }
      write_output(out, format_annotations(rows));
    } else if (*eval_cmd) {
      const auto gold_rows = parse_annotations(gold);
      const auto pred_rows = parse_annotations(pred);
      std::multimap<std::tuple<std::string, std::size_t, std::size_t>, TechniqueLabel> by_span;
      for (const auto& r : pred_rows) by_span.emplace(std::tuple{r.article_id, r.begin, r.end}, r.label);
      std::vector<TechniqueLabel> g, p;
      for (const auto& r : gold_rows) {
        auto it = by_span.find(std::tuple{r.article_id, r.begin, r.end});
        if (it == by_span.end()) {
          throw FormatError("no prediction for article " + r.article_id + " span " +
                            std::to_string(r.begin) + "-" + std::to_string(r.end));
        }
        g.push_back(r.label);
        p.push_back(it->second);
        by_span.erase(it);
      }
      const auto report = micro_f1(g, p);
      std::cout << report_text({"evaluate", gold, {}}, report);
      if (!report_out.empty()) write_file(report_out, report_tsv(report));
    } else if (*export_cmd) {
      const auto vocab = WordPieceVocab::from_file(vocab_path);
      const auto fragments = fragments_from_jsonl(read_file(fragments_path));
      FinetuneManifest m;
      m.checkpoint = checkpoint;
      WordPieceOptions wp;
      wp.lowercase = !cased;
      const auto written = export_dataset(fragments, vocab, max_len, out_dir, m, wp);
      std::cerr << "exported " << written.n_examples << " examples to " << out_dir << "\n";
    } else if (*run_cmd) {
      ExperimentConfig c;
      if (!manifest_path.empty()) {
        c = config_from_manifest(manifest_path);
      } else if (!config_path.empty()) {
        c = config_from_json(read_file(config_path));
      } else if (!named.empty()) {
        c = named_config(named);
      }
      if (!named.empty() && !config_path.empty()) {
        throw ConfigError("use either --config or --named");
      }
      if (!run_articles.empty()) c.articles_dir = run_articles;
      if (!run_annotations.empty()) c.annotations = run_annotations;
      if (!run_out.empty()) c.output_dir = run_out;
      if (run_seed) c.seed = *run_seed;
      if (!run_algorithm.empty()) c.train.algorithm = parse_algorithm(run_algorithm);
      if (run_alpha) c.train.ridge_alpha = *run_alpha;
      if (!run_vocab.empty()) c.bert_vocab = run_vocab;
      if (run_max_len) c.max_len = *run_max_len;
      if (no_preprocess) c.preprocess = false;
      if (preprocess_first) c.map_before_preprocess = false;
      if (run_dedup) c.dedup = true;
      run_mapping.apply(c);
      run_prep.apply(c.preprocess_config);
      if (c.articles_dir.empty() || c.annotations.empty()) {
        throw ConfigError("run needs --articles and --annotations (or a config providing them)");
      }
      if (c.export_bert) {
        const auto manifests = run_bert_export(c);
        std::cout << "exported " << manifests.at(0).n_examples << " train / "
                  << manifests.at(1).n_examples << " dev examples to " << c.output_dir.string()
                  << "\n";
      } else {
        const auto result = run_experiment(c);
        std::cout << read_file(c.output_dir / "report.txt");
        (void)result;
      }
    } else if (*synth_cmd) {
      const auto corpus = make_synthetic_corpus(synth_seed, n_per_label, default_list_dir());
      write_synthetic_corpus(corpus, out_dir);
      std::cerr << "wrote " << corpus.fragments.size() << " fragments in " << corpus.articles.size()
                << " articles to " << out_dir << "\n";
    } else if (*configs_cmd) {
      for (const auto& name : named_config_names()) std::cout << name << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
