// Copyright 2026 The dgkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dgkit/cli/app.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "dgkit/bench/benchgen.hpp"
#include "dgkit/core/serialize.hpp"
#include "dgkit/eval/evaluate.hpp"
#include "dgkit/synth/kernels.hpp"
#include "support.hpp"

namespace dgkit {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  set_thread_count(0);
  return {code, out.str(), err.str()};
}

// One small corpus shared by the read-only tests.
class CliCorpus : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir;
    const Result r = run({"synth", "--seed", "5", "--n-scenes", "3", "--scene-size", "64", "--pairs", "12",
                          "--split", "hard", "--out", (dir_->path() / "corpus").string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string manifest() { return (dir_->path() / "corpus" / "manifest.json").string(); }
  static std::filesystem::path path(const std::string& name) { return dir_->path() / name; }

  static testing::TempDir* dir_;
};

testing::TempDir* CliCorpus::dir_ = nullptr;

TEST(Cli, SynthIsByteReproducible) {
  testing::TempDir dir;
  const std::vector<std::string> base = {"synth", "--seed", "11", "--n-scenes", "2", "--scene-size", "64",
                                         "--pairs", "6"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", (dir / "a").string()});
  b.insert(b.end(), {"--out", (dir / "b").string(), "--threads", "1"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  const auto ta = testing::tree_contents(dir / "a");
  EXPECT_EQ(ta, testing::tree_contents(dir / "b"));
  EXPECT_GT(ta.size(), 6u);
}

TEST(Cli, SynthMissingScenesDirectoryIsExitTwo) {
  testing::TempDir dir;
  const Result r = run({"synth", "--scenes", (dir / "nope").string(), "--out", (dir / "c").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("IoError"), std::string::npos);
}

TEST(Cli, SynthZeroPairsWritesEmptyManifest) {
  testing::TempDir dir;
  const Result r = run({"synth", "--pairs", "0", "--out", (dir / "c").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const LoadedManifest m = read_manifest(dir / "c" / "manifest.json");
  EXPECT_TRUE(m.manifest.pairs.empty());
  EXPECT_EQ(run({"validate", (dir / "c" / "manifest.json").string()}).code, 0);
}

TEST(Cli, SynthFromSceneDirectory) {
  testing::TempDir dir;
  for (const Scene& s : make_procedural_scenes(2, 1, {.width = 64, .height = 64})) store_scene(dir / "scenes", s);
  const Result r = run({"synth", "--scenes", (dir / "scenes").string(), "--pairs", "3", "--out", (dir / "c").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_manifest(dir / "c" / "manifest.json").manifest.pairs.size(), 3u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"synth", "--bogus"}).code, 2);
  EXPECT_EQ(run({"synth"}).code, 2);  // --out missing
  EXPECT_EQ(run({"synth", "--split", "tricky", "--out", "/tmp/x"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval"}).code, 2);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(CliCorpus, ValidateCleanCorpus) {
  const Result r = run({"validate", (path("corpus")).string()});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("checked 12 graph(s), 0 invalid"), std::string::npos);
  EXPECT_EQ(run({"validate", manifest()}).code, 0);
}

TEST_F(CliCorpus, ValidateEmptyInput) {
  const Result r = run({"validate"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "checked 0 graph(s), 0 invalid\n");
}

TEST_F(CliCorpus, ValidateNamesCorruptedFileAndDefinition) {
  testing::TempDir dir;
  const LoadedManifest m = read_manifest(manifest());
  DistortionGraph g = load_pair_graph(m, m.manifest.pairs[3]);
  std::swap(g.distortion_edges[0].from_side, g.distortion_edges[0].to_side);
  const auto file = dir / "bad.dg.json";
  write_file_atomic(file, serialize(g, {.allow_invalid = true}));
  write_file_atomic(dir / "good.dg.json", serialize(load_pair_graph(m, m.manifest.pairs[0])));
  const Result r = run({"validate", dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find(file.string() + ": ORDERING edge"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("checked 2 graph(s), 1 invalid"), std::string::npos);

  write_file_atomic(file, "{\"version\": 1");
  const Result parse = run({"validate", file.string()});
  EXPECT_EQ(parse.code, 1);
  EXPECT_NE(parse.out.find("ParseError"), std::string::npos);
}

TEST_F(CliCorpus, EvalGroundTruthIsPerfect) {
  const LoadedManifest m = read_manifest(manifest());
  const auto graphs = load_graphs(m);
  write_file_atomic(path("truth.csv"), predictions_from_graphs(graphs).to_csv());
  const auto out_dir = path("metrics");
  const Result r = run({"eval", "--manifest", manifest(), "--predictions", path("truth.csv").string(), "--out",
                        out_dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("comparison"), std::string::npos);
  const std::string json = read_file(out_dir / "metrics.json");
  EXPECT_NE(json.find("\"srcc\": 1.0"), std::string::npos);
  EXPECT_NE(json.find("\"plcc\": 1.0"), std::string::npos);
  EXPECT_EQ(json.find("\"accuracy\": 0."), std::string::npos);
  EXPECT_EQ(read_file(out_dir / "metrics.txt"), r.out);
}

TEST_F(CliCorpus, EvalRandomBaseline) {
  const Result r = run({"eval", "--manifest", manifest(), "--random-baseline", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Result again = run({"eval", "--manifest", manifest(), "--random-baseline", "--seed", "3"});
  EXPECT_EQ(r.out, again.out);
  const Result csv = run({"baseline", "--manifest", manifest(), "--seed", "3", "--out", path("rnd.csv").string()});
  ASSERT_EQ(csv.code, 0);
  const Result via_file = run({"eval", "--manifest", manifest(), "--predictions", path("rnd.csv").string()});
  EXPECT_EQ(via_file.out, r.out);
  EXPECT_EQ(run({"eval", "--manifest", manifest(), "--random-baseline", "--predictions", "x.csv"}).code, 2);
}

TEST_F(CliCorpus, EvalMalformedCsvReportsLine) {
  write_file_atomic(path("bad.csv"),
                    "pair_id,region_index,relation,dist_A,dist_T,sev_A,sev_T,score_A,score_T\n"
                    "hard_00000,1,same,blur,clean,minor,none,0.5,1.0\n"
                    "hard_00000,2,same,blur,clean,minor,none,0.5\n");
  const Result r = run({"eval", "--manifest", manifest(), "--predictions", path("bad.csv").string(), "--lenient"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliCorpus, EvalMissingPredictions) {
  write_file_atomic(path("partial.csv"),
                    "pair_id,region_index,relation,dist_A,dist_T,sev_A,sev_T,score_A,score_T\n"
                    "hard_00000,1,same,blur,clean,minor,none,0.5,1.0\n");
  EXPECT_EQ(run({"eval", "--manifest", manifest(), "--predictions", path("partial.csv").string()}).code, 1);
  EXPECT_EQ(run({"eval", "--manifest", manifest(), "--predictions", path("partial.csv").string(), "--lenient"}).code,
            0);
}

TEST_F(CliCorpus, RankOracleAndSwappedSides) {
  const Result score = run({"rank", "--manifest", manifest(), "--mode", "score"});
  ASSERT_EQ(score.code, 0) << score.err;
  EXPECT_NE(score.out.find("mode score, 12 pairs, ranking accuracy"), std::string::npos);
  const Result predicate = run({"rank", "--manifest", manifest(), "--mode", "predicate-based"});
  ASSERT_EQ(predicate.code, 0);

  // Without a prediction file the ground-truth graphs act as an oracle.
  EXPECT_NE(score.out.find("ranking accuracy 1.000000"), std::string::npos) << score.out;
  EXPECT_NE(predicate.out.find("ranking accuracy 1.000000"), std::string::npos) << predicate.out;

  const Result swapped = run({"rank", "--manifest", manifest(), "--mode", "score", "--swap-sides"});
  ASSERT_EQ(swapped.code, 0);
  std::istringstream a(score.out), b(swapped.out);
  std::string la, lb;
  int compared = 0;
  while (std::getline(a, la) && std::getline(b, lb)) {
    if (la.rfind("hard_", 0) != 0) continue;
    std::istringstream sa(la), sb(lb);
    std::string ida, va, idb, vb;
    sa >> ida >> va;
    sb >> idb >> vb;
    ASSERT_EQ(ida, idb);
    const auto mirrored = va == "anchor_better" ? "target_better" : va == "target_better" ? "anchor_better" : "tie";
    EXPECT_EQ(vb, mirrored);
    ++compared;
  }
  EXPECT_EQ(compared, 12);
  EXPECT_EQ(run({"rank", "--manifest", manifest(), "--mode", "votes"}).code, 2);
}

TEST_F(CliCorpus, RankWithPredictionFile) {
  const auto graphs = load_graphs(read_manifest(manifest()));
  write_file_atomic(path("truth_rank.csv"), predictions_from_graphs(graphs).to_csv());
  const Result from_file =
      run({"rank", "--manifest", manifest(), "--predictions", path("truth_rank.csv").string()});
  const Result from_graphs = run({"rank", "--manifest", manifest()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, from_graphs.out);
}

TEST_F(CliCorpus, PromptAndScore) {
  const LoadedManifest m = read_manifest(manifest());
  const auto graph_path = (m.directory / m.manifest.pairs[0].graph_ref).string();
  const Result p = run({"prompt", graph_path});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.out, render_prompt(load_pair_graph(m, m.manifest.pairs[0]), PromptStyle::kPerRegion));
  EXPECT_EQ(run({"prompt", graph_path, "--style", "compact"}).code, 0);
  EXPECT_EQ(run({"prompt", graph_path, "--style", "fancy"}).code, 2);

  const Result table = run({"score", "--manifest", manifest(), "--out", path("scores.csv").string()});
  ASSERT_EQ(table.code, 0) << table.err;
  const ScoreTable scores = ScoreTable::load(read_file(path("scores.csv")));
  const DistortionGraph g = load_pair_graph(m, m.manifest.pairs[0]);
  for (const RegionNode& n : g.target_nodes) {
    EXPECT_EQ(scores.find(g.pair_id, ImageSide::kTarget, n.index), n.score);
  }

  // The table drives corpus generation through the pluggable scorer.
  const Result again = run({"synth", "--seed", "5", "--n-scenes", "3", "--scene-size", "64", "--pairs", "12",
                            "--split", "hard", "--scorer", "score-table:" + path("scores.csv").string(), "--out",
                            path("from_table").string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(read_file(path("from_table") / m.manifest.pairs[5].graph_ref),
            read_file(m.directory / m.manifest.pairs[5].graph_ref));

  const auto& r = m.manifest.pairs[0];
  const Result single = run({"score", "--reference", (m.directory / r.scene_image).string(), "--degraded",
                             (m.directory / r.anchor_image).string(), "--label-map",
                             (m.directory / r.label_map).string()});
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_NE(single.out.find("1," + format_score(g.node(ImageSide::kAnchor, 1).score)), std::string::npos);
}

TEST(CliConfig, KeyValueAndJsonFilesWithFlagPrecedence) {
  testing::TempDir dir;
  write_file_atomic(dir / "cfg.txt", "# corpus settings\nseed = 11\nn-scenes=2\nscene-size=64\npairs=4\n");
  write_file_atomic(dir / "cfg.json", R"({"seed": 11, "n-scenes": 2, "scene-size": 64, "pairs": 4})");
  ASSERT_EQ(run({"synth", "--config", (dir / "cfg.txt").string(), "--out", (dir / "a").string()}).code, 0);
  ASSERT_EQ(run({"synth", "--config", (dir / "cfg.json").string(), "--out", (dir / "b").string()}).code, 0);
  ASSERT_EQ(run({"synth", "--seed", "11", "--n-scenes", "2", "--scene-size", "64", "--pairs", "4", "--out",
                 (dir / "c").string()})
                .code,
            0);
  EXPECT_EQ(testing::tree_contents(dir / "a"), testing::tree_contents(dir / "c"));
  EXPECT_EQ(testing::tree_contents(dir / "b"), testing::tree_contents(dir / "c"));

  // A flag on the command line wins over the file.
  ASSERT_EQ(run({"synth", "--config", (dir / "cfg.txt").string(), "--pairs", "2", "--out", (dir / "d").string()})
                .code,
            0);
  EXPECT_EQ(read_manifest(dir / "d" / "manifest.json").manifest.pairs.size(), 2u);
  EXPECT_EQ(run({"synth", "--config", (dir / "missing.txt").string(), "--out", (dir / "e").string()}).code, 2);
}

TEST(CliBuildBench, WritesOneCorpusPerSplit) {
  testing::TempDir dir;
  const Result r = run({"build-bench", "--n-scenes", "2", "--scene-size", "64", "--pairs", "3", "--out",
                        dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* split : {"easy", "medium", "hard"}) {
    EXPECT_NE(r.out.find(std::string(split) + ": 3 pairs, membership ok"), std::string::npos);
    const LoadedManifest m = read_manifest(dir / split / "manifest.json");
    EXPECT_EQ(std::string(to_string(m.manifest.split)), split);
    EXPECT_TRUE(check_split_membership(m.manifest).empty());
  }
}

}  // namespace
}  // namespace dgkit
