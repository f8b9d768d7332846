#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>

#include "propaganda/corpus.hpp"
#include "scratch_dir.hpp"

using propaganda::read_file;
using propaganda::write_file;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(PROPAGANDA_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_to(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(PROPAGANDA_CLI) + " " + args + " >" + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("ingest"), 1);
  EXPECT_EQ(run("run --named no-such-config --articles a --annotations b"), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, DataErrorsExitTwo) {
  oracle::ScratchDir dir;
  std::filesystem::create_directories(dir / "articles");
  write_file(dir / "bad.tsv", "1\tNoSuchLabel\t0\t1\n");
  EXPECT_EQ(run("ingest --articles " + (dir / "articles").string() + " --annotations " +
                (dir / "bad.tsv").string()),
            2);
  EXPECT_EQ(run("ingest --articles " + (dir / "articles").string() + " --annotations " +
                (dir / "missing.tsv").string()),
            2);
}

TEST(Cli, MapAndPreprocessText) {
  oracle::ScratchDir dir;
  ASSERT_EQ(run_to("map --lists countries --audit " + (dir / "audit.tsv").string() +
                       " --text 'This is not Iran or Riyadh this is America.'",
                   dir / "out.txt"),
            0);
  EXPECT_EQ(read_file(dir / "out.txt"), "This is not NATION or Riyadh this is NATION.\n");
  EXPECT_EQ(read_file(dir / "audit.tsv"), "12\t16\tNATION\n35\t42\tNATION\n");

  ASSERT_EQ(run_to("preprocess --text 'Vote #2020 NOW!!!'", dir / "pre.txt"), 0);
  EXPECT_EQ(read_file(dir / "pre.txt"), "vote now\n");
}

TEST(Cli, StagewisePipeline) {
  oracle::ScratchDir dir;
  const auto d = dir.path().string();
  ASSERT_EQ(run("synth --seed 2 --n-per-label 8 --out-dir " + d + "/corpus"), 0);
  ASSERT_EQ(run("ingest --articles " + d + "/corpus/articles --annotations " + d +
                "/corpus/annotations.tsv -o " + d + "/frags.jsonl"),
            0);
  ASSERT_EQ(run("map --lists all --in " + d + "/frags.jsonl -o " + d + "/mapped.jsonl"), 0);
  ASSERT_EQ(run("preprocess --in " + d + "/mapped.jsonl -o " + d + "/pre.jsonl"), 0);
  ASSERT_EQ(run("train --fragments " + d + "/pre.jsonl --model-dir " + d + "/model"), 0);
  ASSERT_EQ(run("predict --model-dir " + d + "/model --fragments " + d + "/pre.jsonl -o " + d +
                "/pred.tsv"),
            0);
  ASSERT_EQ(run_to("evaluate --gold " + d + "/corpus/annotations.tsv --pred " + d + "/pred.tsv",
                   dir / "report.txt"),
            0);
  EXPECT_NE(read_file(dir / "report.txt").find("Overall"), std::string::npos);

  write_file(dir / "vocab.txt", "[PAD]\n[UNK]\n[CLS]\n[SEP]\nvote\nnow\n");
  ASSERT_EQ(run("export-bert --fragments " + d + "/pre.jsonl --vocab " + d + "/vocab.txt --out-dir " +
                d + "/bert --max-len 16"),
            0);
  EXPECT_TRUE(std::filesystem::exists(dir / "bert" / "examples.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "bert" / "manifest.json"));
}

TEST(Cli, RunAndReplay) {
  oracle::ScratchDir dir;
  const auto d = dir.path().string();
  ASSERT_EQ(run("synth --seed 1 --n-per-label 10 --out-dir " + d + "/corpus"), 0);
  const auto data = " --articles " + d + "/corpus/articles --annotations " + d + "/corpus/annotations.tsv";
  ASSERT_EQ(run("run --named nation --seed 1" + data + " --out-dir " + d + "/a"), 0);
  ASSERT_EQ(run("run --manifest " + d + "/a/manifest.json --out-dir " + d + "/b"), 0);
  EXPECT_EQ(read_file(dir / "a" / "report.tsv"), read_file(dir / "b" / "report.tsv"));

  write_file(dir / "cfg.json", R"({"base":"baseline","train":{"algorithm":"sgd_hinge"}})");
  ASSERT_EQ(run("run --config " + d + "/cfg.json" + data + " --out-dir " + d + "/c"), 0);
  EXPECT_NE(read_file(dir / "c" / "model.tsv").find("sgd_hinge"), std::string::npos);
  EXPECT_EQ(run("run --config " + d + "/cfg.json --alpha -1" + data + " --out-dir " + d + "/e"), 2);
}
