#include <gtest/gtest.h>

#include <json.hpp>

#include "propaganda/corpus.hpp"
#include "propaganda/errors.hpp"
#include "propaganda/experiment.hpp"
#include "propaganda/synth.hpp"
#include "scratch_dir.hpp"

using namespace propaganda;

namespace {

struct SynthFixture : ::testing::Test {
  static void SetUpTestSuite() {
    dir = new oracle::ScratchDir("propaganda-exp");
    write_synthetic_corpus(make_synthetic_corpus(1, 20, default_list_dir()), dir->path());
  }
  static void TearDownTestSuite() {
    delete dir;
    dir = nullptr;
  }
  static ExperimentConfig config(std::string_view name, const std::string& out) {
    auto c = named_config(name);
    c.articles_dir = dir->path() / "articles";
    c.annotations = dir->path() / "annotations.tsv";
    c.output_dir = dir->path() / out;
    return c;
  }
  static oracle::ScratchDir* dir;
};
oracle::ScratchDir* SynthFixture::dir = nullptr;

}  // namespace

TEST(Configs, NamedRows) {
  const auto names = named_config_names();
  for (const auto* n : {"baseline", "nation", "religion", "politics", "slogans", "combined-lists",
                        "person", "various-entities", "bert-raw", "bert-lists-preprocessed"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
  EXPECT_TRUE(named_config("baseline").lists.empty());
  EXPECT_EQ(named_config("nation").lists.size(), 1u);
  EXPECT_EQ(named_config("nation").lists[0].tag, "NATION");
  EXPECT_EQ(named_config("combined-lists").lists.size(), 4u);
  EXPECT_EQ(named_config("various-entities").entity_types.size(), 6u);
  EXPECT_TRUE(named_config("bert-raw").export_bert);
  EXPECT_FALSE(named_config("bert-raw").preprocess);
  EXPECT_THROW(named_config("nope"), ConfigError);
}

TEST(Configs, JsonRoundTripAndOverrides) {
  auto c = named_config("combined-lists");
  c.seed = 77;
  c.train.algorithm = Algorithm::kSgdHinge;
  c.preprocess_config.remove_numbers = false;
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));

  const auto partial = config_from_json(R"({"base":"nation","seed":3,"lists":["religion"]})");
  EXPECT_EQ(partial.seed, 3u);
  ASSERT_EQ(partial.lists.size(), 1u);
  EXPECT_EQ(partial.lists[0].tag, "RELIGION");
  EXPECT_THROW(config_from_json("{not json"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"train":{"algorithm":"boosting"}})"), ConfigError);
}

TEST(Configs, ListArgument) {
  const auto l = parse_list_argument("mine=/tmp/x.txt:NATION");
  EXPECT_EQ(l.name, "mine");
  EXPECT_EQ(l.path, "/tmp/x.txt");
  EXPECT_EQ(l.tag, "NATION");
  EXPECT_THROW(parse_list_argument("mine"), ConfigError);
  EXPECT_THROW(parse_list_argument("mine=/tmp/x.txt"), ConfigError);
}

TEST(Pipeline, OrderMatters) {
  auto c = named_config("nation");
  const LabeledFragment f{"1", TechniqueLabel::kFlagWaving, 0, 0, U"Long live Iran, 100%!"};
  EXPECT_EQ(TextPipeline(c).apply(f), U"long live NATION");
  c.map_before_preprocess = false;
  EXPECT_EQ(TextPipeline(c).apply(f), U"long live NATION");
  c.preprocess = false;
  EXPECT_EQ(TextPipeline(c).apply(f), U"Long live NATION, 100%!");
  // Lowercasing first hides nothing here because long country names match
  // case-insensitively, but acronyms are lost.
  auto d = named_config("nation");
  d.map_before_preprocess = false;
  const LabeledFragment uk{"1", TechniqueLabel::kFlagWaving, 0, 0, U"the UK votes"};
  EXPECT_EQ(TextPipeline(d).apply(uk), U"the uk votes");
  d.map_before_preprocess = true;
  EXPECT_EQ(TextPipeline(d).apply(uk), U"the NATION votes");
}

TEST(Pipeline, HeuristicPerson) {
  const auto c = named_config("person");
  const LabeledFragment f{"1", TechniqueLabel::kAppealToAuthority, 0, 0, U"as Dr John Smith said"};
  EXPECT_EQ(TextPipeline(c).apply(f), U"as PERSON said");
}

TEST_F(SynthFixture, BaselineRunWritesArtifactsDeterministically) {
  const auto a = run_experiment(config("baseline", "a"));
  const auto b = run_experiment(config("baseline", "b"));
  EXPECT_GT(a.report.overall_micro_f1, 0.5);
  EXPECT_EQ(a.predictions, b.predictions);
  for (const auto* f : {"predictions.tsv", "report.tsv", "report.txt", "model.tsv", "vocab.tsv"}) {
    EXPECT_EQ(read_file(dir->path() / "a" / f), read_file(dir->path() / "b" / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(read_file(dir->path() / "a" / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_EQ(manifest["n_dev"], a.dev.size());
}

TEST_F(SynthFixture, ManifestReplayReproducesReport) {
  const auto first = run_experiment(config("combined-lists", "c"));
  auto replay = config_from_manifest(dir->path() / "c" / "manifest.json");
  replay.output_dir = dir->path() / "d";
  const auto second = run_experiment(replay);
  EXPECT_EQ(read_file(dir->path() / "c" / "report.tsv"), read_file(dir->path() / "d" / "report.tsv"));
  EXPECT_EQ(first.report.overall_micro_f1, second.report.overall_micro_f1);
}

TEST_F(SynthFixture, StageErrorsNameTheStage) {
  auto c = config("baseline", "e");
  c.annotations = dir->path() / "missing.tsv";
  try {
    run_experiment(c);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "ingest");
  }
  auto t = config("baseline", "f");
  t.train.ridge_alpha = -3;
  try {
    run_experiment(t);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "train");
  }
}

TEST(Fragments, JsonlRoundTrip) {
  const std::vector<LabeledFragment> f = {{"1", TechniqueLabel::kDoubt, 3, 9, U"naïve \"q\"\n"},
                                          {"2", TechniqueLabel::kSlogans, 0, 1, U"x"}};
  EXPECT_EQ(fragments_from_jsonl(fragments_to_jsonl(f)), f);
  EXPECT_THROW(fragments_from_jsonl("{\"article_id\":\"1\"}\n"), FormatError);
}

TEST(Pipeline, ExternalEntitiesUseArticleOffsets) {
  oracle::ScratchDir dir;
  write_file(dir / "ents.jsonl",
             "{\"doc_key\":\"1\",\"begin\":13,\"end\":23,\"type\":\"PERSON\"}\n"
             "{\"doc_key\":\"1\",\"begin\":27,\"end\":31,\"type\":\"GPE\"}\n"
             "{\"doc_key\":\"2\",\"begin\":0,\"end\":4,\"type\":\"PERSON\"}\n");
  auto c = named_config("person");
  c.person = PersonSource::kExternal;
  c.entities = dir / "ents.jsonl";
  c.preprocess = false;
  // Fragment [10, 31) of article 1: "as John Smith in Iran".
  const LabeledFragment f{"1", TechniqueLabel::kAppealToAuthority, 10, 31, U"as John Smith in Iran"};
  EXPECT_EQ(TextPipeline(c).apply(f), U"as PERSON in Iran");
  c.entity_types = various_entity_types();
  EXPECT_EQ(TextPipeline(c).apply(f), U"as PERSON in GPE");
}
