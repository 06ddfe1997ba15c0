// Copyright 2026 The gamevec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gamevec/experiment.h"
#include "gamevec/strategy_io.h"
#include "support.h"

using namespace gamevec;
using namespace gamevec::testing;

namespace {

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig Parse(const std::string& text) { return ParseExperimentConfig(text); }

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = Parse(R"({"game":"leduc:3","methods":["random","hand_bucketing"],
      "k1":[1,2],"k2":[3],"seeds":[0,4],"base_seed":9,"threads":2,
      "solver":{"variant":"cfr","target_eps":1e-3,"warm_start_iterations":0},
      "output_dir":"somewhere"})");
  CHECK(cfg.game == GameSpec::Parse("leduc:3"));
  CHECK(cfg.methods.size() == 2);
  CHECK(cfg.k1 == std::vector<int>{1, 2});
  CHECK(cfg.seeds == std::vector<int>{0, 4});
  CHECK(cfg.base_seed == 9);
  CHECK(cfg.solver.variant == SolverVariant::kCfr);
  CHECK(cfg.solver.warm_start_iterations == 0);
  CHECK(cfg.output_dir == "somewhere");

  const auto defaults = Parse(R"({"game":"kuhn:8","methods":["random"],"k":[2],"seeds":3})");
  CHECK(defaults.seeds == std::vector<int>{0, 1, 2});
  CHECK(defaults.solver.warm_start_iterations == ExperimentSolveOptions().warm_start_iterations);
  CHECK(defaults.solver.target_eps == 1e-6);

  const char* bad[] = {
      R"({"methods":["random"],"k":[1],"seeds":1})",                           // no game
      R"({"game":"kuhn:8","methods":[],"k":[1],"seeds":1})",                   // no methods
      R"({"game":"kuhn:8","methods":["random"],"k":[0],"seeds":1})",           // k < 1
      R"({"game":"kuhn:8","methods":["random"],"k":[1],"seeds":[]})",          // no seeds
      R"({"game":"kuhn:8","methods":["random"],"k":[1],"k2":[1],"seeds":1})",  // k2 on kuhn
      R"({"game":"leduc:3","methods":["random"],"k1":[1],"seeds":1})",         // k2 missing
      R"({"game":"kuhn:8","methods":["kmeans"],"k":[1],"seeds":1})",           // no embeddings
      R"({"game":"kuhn:8","methods":["random"],"k":[1],"seeds":1,"embedding":{"source":"remote","provider":"openai"}})",
      R"({"game":"kuhn:8","methods":["random"],"k":"x","seeds":1})",
      R"(not json)",
  };
  for (const char* text : bad) CHECK_THROWS_AS(Parse(text), Error);
}

TEST_CASE("cell seeds") {
  const auto a = CellSeed(1, AbstractionMethod::kKMeans, 4, 0, 2);
  CHECK(a == CellSeed(1, AbstractionMethod::kKMeans, 4, 0, 2));
  CHECK(a != CellSeed(1, AbstractionMethod::kRandom, 4, 0, 2));
  CHECK(a != CellSeed(1, AbstractionMethod::kKMeans, 8, 0, 2));
  CHECK(a != CellSeed(1, AbstractionMethod::kKMeans, 4, 0, 3));
  CHECK(a != CellSeed(2, AbstractionMethod::kKMeans, 4, 0, 2));
}

TEST_CASE("cell maps clamp k to the domain") {
  const auto spec = GameSpec::Parse("kuhn:4");
  const auto hb = BuildCellMaps(spec, AbstractionMethod::kHandBucketing, 100, 0, 1, nullptr);
  CHECK(hb[0].NonEmptyBuckets() == 4);
  const auto rnd = BuildCellMaps(spec, AbstractionMethod::kRandom, 100, 0, 1, nullptr);
  CHECK(rnd[0].k == 8);
  CHECK_THROWS_AS(BuildCellMaps(spec, AbstractionMethod::kKMeans, 2, 0, 1, nullptr), Error);

  const auto leduc = BuildCellMaps(GameSpec::Parse("leduc:3"),
                                   AbstractionMethod::kHandBucketing, 2, 3, 1, nullptr);
  REQUIRE(leduc.size() == 2);
  CHECK(leduc[1].nested);
}

TEST_CASE("baselines coincide at one bucket; grid is complete and sorted") {
  ExperimentConfig cfg = Parse(R"({"game":"kuhn:16","methods":["random","hand_bucketing"],
      "k":[2,1],"seeds":[1,0],"solver":{"target_eps":1e-5}})");
  cfg.output_dir = TempDir("exp_grid");
  const auto records = RunExperiment(cfg);
  REQUIRE(records.size() == 8);
  CHECK(records[0].method == "hand_bucketing");
  CHECK(records[0].k1 == 1);
  CHECK(records[0].seed == 0);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    CHECK(std::tie(a.method, a.k1, a.k2, a.seed) < std::tie(b.method, b.k1, b.k2, b.seed));
  }
  for (const auto& r : records) {
    CHECK(r.exploitability >= -1e-9);
    CHECK(r.num_sequences > 0);
    CHECK(r.nnz > 0);
    if (r.k1 == 1) CHECK(r.exploitability == records[0].exploitability);
  }
}

TEST_CASE("identity cell is lossless") {
  for (const char* game : {"kuhn:5", "leduc:2"}) {
    ExperimentConfig cfg;
    cfg.game = GameSpec::Parse(game);
    cfg.methods = {AbstractionMethod::kIdentity};
    cfg.k1 = {1};
    if (cfg.game.kind == GameSpec::Kind::kLeduc) cfg.k2 = {1};
    cfg.seeds = {0};
    cfg.solver.target_eps = 1e-5;
    cfg.output_dir = TempDir("exp_identity");
    const auto records = RunExperiment(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].exploitability <= 2 * cfg.solver.target_eps);
    const auto full = ComputeSizeMetrics(BuildGame(cfg.game));
    CHECK(records[0].num_sequences == full.num_sequences);
    CHECK(records[0].nnz == full.nnz);
  }
}

TEST_CASE("experiment outputs are reproducible and thread-independent") {
  const std::string text = R"({"game":"leduc:2","methods":["kmeans","random"],
      "k1":[1,3],"k2":[2,6],"seeds":2,
      "embedding":{"source":"remote","provider":"mock"},
      "solver":{"target_eps":1e-4,"warm_start_iterations":100}})";
  ExperimentConfig a = Parse(text);
  a.output_dir = TempDir("exp_a");
  WriteExperimentOutputs(a, RunExperiment(a));
  ExperimentConfig b = Parse(text);
  b.output_dir = TempDir("exp_b");
  b.threads = 3;
  WriteExperimentOutputs(b, RunExperiment(b));
  CHECK(Slurp(a.output_dir / "results.csv") == Slurp(b.output_dir / "results.csv"));
  CHECK(Slurp(a.output_dir / "summary.csv") == Slurp(b.output_dir / "summary.csv"));
  CHECK(ParseResults(a.output_dir / "results.csv").size() == 16);
  CHECK(std::filesystem::exists(a.output_dir / "embeddings.jsonl"));
}

TEST_CASE("experiment with trained embeddings") {
  ExperimentConfig cfg = Parse(R"({"game":"kuhn:8","methods":["kmeans"],"k":[4],"seeds":2,
      "embedding":{"source":"train","sample":{"hands":5000,"seed":3,"solve_eps":1e-4},
                   "glove":{"vector_size":8,"max_iter":10,"min_count":1}},
      "solver":{"target_eps":1e-4}})");
  cfg.output_dir = TempDir("exp_train");
  const auto records = RunExperiment(cfg);
  CHECK(records.size() == 2);
  const auto table = LoadEmbeddingFile(cfg.output_dir / "embeddings.jsonl");
  CHECK(table.dim() == 8);
  CHECK(table.Contains("7?"));
}

TEST_CASE("errors name the failing cell") {
  const auto dir = TempDir("exp_err");
  EmbeddingTable partial(2, "test");
  partial.Add("0?", {0, 1});
  SaveEmbeddingFile(partial, dir / "e.jsonl");
  ExperimentConfig cfg = Parse(R"({"game":"kuhn:4","methods":["kmeans"],"k":[2],"seeds":1,
      "embedding":{"source":"file","path":")" + (dir / "e.jsonl").string() + R"("}})");
  cfg.output_dir = dir;
  CHECK_THROWS_WITH_AS(RunExperiment(cfg), doctest::Contains("cell method=kmeans k1=2"), Error);
}

TEST_CASE("strategy files") {
  const auto dir = TempDir("strategy");
  const GameTree g = BuildKuhn({3});
  const BehavioralProfile eq = KuhnEquilibrium(g);
  for (const char* name : {"s.json", "s.json.gz"}) {
    SaveStrategy(g, eq, dir / name);
    const BehavioralProfile back = LoadStrategy(g, dir / name);
    CHECK(back.probs == eq.probs);
  }
  CHECK(Slurp(dir / "s.json.gz").substr(0, 2) == "\x1f\x8b");
  CHECK(Slurp(dir / "s.json").find("\"P1|kuhn-deal:1|cB\"") != std::string::npos);

  // Loading against another game fails on unknown or missing keys.
  CHECK_THROWS_AS(LoadStrategy(BuildKuhn({4}), dir / "s.json"), Error);
  {
    std::ofstream(dir / "bad.json") << R"({"game":"kuhn:3","strategy":{"P1|kuhn-deal:0|":[0.5,0.6]}})";
  }
  CHECK_THROWS_AS(LoadStrategy(g, dir / "bad.json"), Error);
  BehavioralProfile partial = eq;
  partial.probs[0].clear();
  CHECK_THROWS_AS(SaveStrategy(g, partial, dir / "p.json"), Error);
}
