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


// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   gamevec_acceptance            all criteria
//   gamevec_acceptance 3 6        selected criteria
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gamevec/abstraction.h"
#include "gamevec/analysis.h"
#include "gamevec/corpus.h"
#include "gamevec/experiment.h"
#include "gamevec/games.h"
#include "gamevec/glove.h"
#include "gamevec/kmeans.h"
#include "gamevec/solver.h"
#include "support.h"

using namespace gamevec;
using namespace gamevec::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Hand-bucketing cell, solved with the experiment defaults (or `options`).
ExperimentRecord HandBucketingCell(const GameSpec& spec, const GameTree& game, int k1, int k2,
                                   const SolveOptions& options = ExperimentSolveOptions()) {
  const auto maps =
      BuildCellMaps(spec, AbstractionMethod::kHandBucketing, k1, k2, 0, nullptr);
  return EvaluateMaps(spec, game, maps, "hand_bucketing", k1, k2, 0, options);
}

Outcome SolverCorrectness() {
  const GameTree g = BuildKuhn({3});
  // Oracle: a profile whose pure-strategy best responses (by exhaustive
  // enumeration) give the same value on both sides certifies the value.
  const BehavioralProfile eq = KuhnEquilibrium(g);
  const double lower = -EnumeratedBestResponse(g, eq, 1);
  const double upper = EnumeratedBestResponse(g, eq, 0);
  if (std::abs(upper - lower) > 1e-12) return {false, "oracle certificate failed"};
  const double value = upper;

  Stopwatch clock;
  SolveOptions o;
  o.variant = SolverVariant::kCfrPlus;
  o.max_iterations = 10000;
  o.target_eps = 1e-3;
  const SolveResult r = Solve(g, o);
  const double seconds = clock.Seconds();
  const double v = TreeWalkUtility(g, r.average);
  const bool pass = r.report.iterations <= 10000 && r.report.exploitability <= 1e-3 &&
                    std::abs(v - value) <= 1e-3 && seconds < 5.0;
  return {pass, Fmt("iterations %d, eps %.3e (<= 1e-3), value %.6f vs oracle %.6f (tol 1e-3), "
                    "%.2fs (< 5s)",
                    r.report.iterations, r.report.exploitability, v, value, seconds)};
}

Outcome SequenceFormEquivalence() {
  Stopwatch clock;
  double worst = 0.0;
  for (const GameTree& g : {BuildKuhn({3}), BuildLeduc({3})}) {
    const SequenceIndex idx = IndexSequences(g);
    const auto m = BuildUtilityMatrix(g, idx);
    Rng rng(2026);
    for (int t = 0; t < 100; ++t) {
      const auto p = RandomProfile(g, rng);
      const double bilinear =
          ExpectedUtility(m, ToSequenceForm(g, idx, p, 0), ToSequenceForm(g, idx, p, 1));
      worst = std::max(worst, std::abs(bilinear - TreeWalkUtility(g, p)));
    }
  }
  const double seconds = clock.Seconds();
  return {worst <= 1e-9 && seconds < 5.0,
          Fmt("max |x'Ay - tree walk| %.2e over 2x100 profiles (<= 1e-9), %.2fs (< 5s)", worst,
              seconds)};
}

Outcome KuhnHandBucketing() {
  const GameSpec spec = GameSpec::Parse("kuhn:256");
  const GameTree g = BuildGame(spec);
  const double e1 = HandBucketingCell(spec, g, 1, 0).exploitability;
  const double e2 = HandBucketingCell(spec, g, 2, 0).exploitability;
  const double e256 = HandBucketingCell(spec, g, 256, 0).exploitability;
  const bool pass =
      std::abs(e1 - 0.1887) <= 5e-3 && std::abs(e2 - 0.1091) <= 1e-2 && e256 <= 1e-4;
  return {pass, Fmt("k=1 %.4f (0.1887 +- 5e-3), k=2 %.4f (0.1091 +- 1e-2), k=256 %.2e (<= 1e-4)",
                    e1, e2, e256)};
}

Outcome LeducHandBucketing() {
  const GameSpec spec = GameSpec::Parse("leduc:13");
  const GameTree g = BuildGame(spec);
  const double coarse = HandBucketingCell(spec, g, 1, 1).exploitability;
  SolveOptions fast = ExperimentSolveOptions();
  fast.target_eps = 1e-4;
  Stopwatch clock;
  const double fine = HandBucketingCell(spec, g, 32, 32, fast).exploitability;
  const double seconds = clock.Seconds();
  const bool coarse_ok = std::abs(coarse - 1.640) <= 0.05;
  const bool fine_ok = fine <= 1e-4 && seconds < 600.0;
  return {coarse_ok && fine_ok,
          Fmt("(1,1) %.4f (1.640 +- 0.05) %s; (32,32) at target 1e-4: %.2e (<= 1e-4) in %.0fs "
              "(< 600s) %s",
              coarse, coarse_ok ? "ok" : "MISS", fine, seconds, fine_ok ? "ok" : "MISS")};
}

Outcome BaselineIdentity() {
  const GameSpec spec = GameSpec::Parse("kuhn:256");
  const GameTree g = BuildGame(spec);
  const ExperimentRecord hb = HandBucketingCell(spec, g, 1, 0);
  double worst = 0.0;
  for (int seed = 0; seed < 3; ++seed) {
    const auto maps = BuildCellMaps(spec, AbstractionMethod::kRandom, 1, 0,
                                    CellSeed(0, AbstractionMethod::kRandom, 1, 0, seed), nullptr);
    const auto rnd = EvaluateMaps(spec, g, maps, "random", 1, 0, seed, ExperimentSolveOptions());
    worst = std::max(worst, std::abs(rnd.exploitability - hb.exploitability));
    if (rnd.num_sequences != hb.num_sequences || rnd.nnz != hb.nnz) {
      return {false, "size metrics differ between random and hand bucketing at k=1"};
    }
  }
  return {worst <= 1e-12,
          Fmt("random k=1 vs hand bucketing k=1 over 3 seeds: max |diff| %.1e (<= 1e-12)", worst)};
}

// Kuhn(256) GloVe embeddings from 10^6 hands of an equilibrium solved to
// 1e-6; computed once per process.
const EmbeddingTable& DeskEmbeddings(double* seconds) {
  static std::optional<EmbeddingTable> table;
  static double elapsed = 0.0;
  if (!table) {
    Stopwatch clock;
    ExperimentConfig cfg;
    cfg.game = GameSpec::Parse("kuhn:256");
    cfg.embedding.kind = EmbeddingSource::Kind::kTrain;
    cfg.embedding.sample_hands = 1000000;
    cfg.embedding.sample_seed = 7;
    cfg.embedding.sample_solve_eps = 1e-6;
    cfg.output_dir = TempDir("acceptance_embeddings");
    table = ResolveEmbeddings(cfg, BuildGame(cfg.game));
    elapsed = clock.Seconds();
  }
  if (seconds) *seconds = elapsed;
  return *table;
}

Outcome KMeansBeatsRandom() {
  Stopwatch clock;
  double train_seconds = 0.0;
  const EmbeddingTable& table = DeskEmbeddings(&train_seconds);
  const GameSpec spec = GameSpec::Parse("kuhn:256");
  const GameTree g = BuildGame(spec);
  std::map<AbstractionMethod, double> mean;
  for (AbstractionMethod m : {AbstractionMethod::kKMeans, AbstractionMethod::kRandom}) {
    for (int seed = 0; seed < 10; ++seed) {
      const auto maps = BuildCellMaps(spec, m, 16, 0, CellSeed(0, m, 16, 0, seed), &table);
      mean[m] += EvaluateMaps(spec, g, maps, std::string(MethodName(m)), 16, 0, seed,
                              ExperimentSolveOptions())
                     .exploitability /
                 10.0;
    }
  }
  const double seconds = clock.Seconds() + train_seconds;
  const double km = mean[AbstractionMethod::kKMeans], rnd = mean[AbstractionMethod::kRandom];
  return {km < rnd && seconds < 1800.0,
          Fmt("k=16, 10 seeds: kmeans mean %.4f < random mean %.4f; %.0fs incl. training "
              "(< 1800s)",
              km, rnd, seconds)};
}

Outcome NeighborOrdinalGap() {
  const EmbeddingTable& table = DeskEmbeddings(nullptr);
  std::vector<std::string> rows;
  for (int c = 0; c < 256; ++c) rows.push_back(ObservationToken(ObservationDomain::kKuhnDeal, c, 256));
  const NeighborList nn = Knn(table, "127?", 7, Metric::kEuclidean, rows);
  double gap = 0.0;
  std::string list;
  for (const auto& n : nn.neighbors) {
    const int card = std::stoi(n.token);
    gap += std::abs(card - 127) / 7.0;
    list += (list.empty() ? "" : " ") + std::to_string(card);
  }
  return {gap < 32.0, Fmt("7-NN of 127? among row deals: [%s], mean |gap| %.2f (< 32)",
                          list.c_str(), gap)};
}

Outcome GloveProperties() {
  Corpus c;
  c.lines = TwoGroupLines(400, 1);
  const Vocabulary v = BuildVocab(c, 1);
  const CoocTable t = BuildCooccurrence(c, v, 10);
  GloveParams p;
  p.vector_size = 10;
  p.max_iter = 100;
  const GloveResult r = TrainGlove(t, p);
  // Loss of the initial model versus after iteration 100.
  const double initial = GloveLoss(t, GloveModel::Init(t.vocab_size, p.vector_size, p.seed), p);
  const double final_loss = r.loss_history.back();
  const double drop = 1.0 - final_loss / initial;
  const EmbeddingTable e = GloveEmbeddings(r.model, v);
  double within = 0, across = 0;
  int nw = 0, na = 0;
  for (const auto& x : e.tokens()) {
    for (const auto& y : e.tokens()) {
      if (x >= y) continue;
      const double cos = Cosine(*e.Find(x), *e.Find(y));
      (x[0] == y[0] ? within : across) += cos;
      ++(x[0] == y[0] ? nw : na);
    }
  }
  within /= nw;
  across /= na;

  CoocTable single;
  single.vocab_size = 2;
  single.entries = {{0, 1, std::exp(1.0)}};
  GloveParams sp;
  sp.vector_size = 5;
  sp.max_iter = 1000;
  const double fit = TrainGlove(single, sp).loss_history.back();

  const bool pass = final_loss < initial && drop >= 0.5 && within > across && fit <= 1e-6;
  return {pass, Fmt("loss %.3g -> %.3g after 100 iterations, drop %.1f%% (>= 50%%), "
                    "cosine within %.3f > across %.3f, single-cell loss %.1e (<= 1e-6)",
                    initial, final_loss, 100 * drop, within, across, fit)};
}

Outcome KMeansProperties() {
  Rng rng(9);
  std::vector<std::vector<double>> pts(500, std::vector<double>(8));
  for (auto& p : pts) {
    for (double& x : p) x = rng.Uniform();
  }
  bool monotone = true;
  for (int k : {2, 8, 32, 100}) {
    const ClusterResult r = KMeans(pts, k, 3);
    for (std::size_t i = 1; i < r.inertia_history.size(); ++i) {
      monotone = monotone && r.inertia_history[i] <= r.inertia_history[i - 1];
    }
  }
  std::vector<std::vector<double>> dup;
  for (int i = 0; i < 60; ++i) dup.push_back(pts[i % 20]);
  const double zero = KMeans(dup, 20, 4).inertia;
  const bool same = KMeans(pts, 16, 11).assignments == KMeans(pts, 16, 11).assignments;
  return {monotone && zero == 0.0 && same,
          Fmt("inertia non-increasing: %s; k = #distinct inertia %.1e (== 0); seeded repeat "
              "identical: %s",
              monotone ? "yes" : "no", zero, same ? "yes" : "no")};
}

Outcome StructuralInvariants() {
  std::vector<std::string> failures;
  // Generated games and their abstractions validate.
  std::vector<std::pair<GameSpec, GameTree>> games;
  for (const char* s : {"kuhn:2", "kuhn:3", "kuhn:256", "leduc:2", "leduc:3", "leduc:13"}) {
    const GameSpec spec = GameSpec::Parse(s);
    games.emplace_back(spec, BuildGame(spec));
  }
  int validated = 0;
  for (const auto& [spec, g] : games) {
    if (!ValidateGame(g).empty()) failures.push_back(spec.ToString() + " invalid");
    ++validated;
    for (AbstractionMethod m : {AbstractionMethod::kRandom, AbstractionMethod::kHandBucketing,
                                AbstractionMethod::kIdentity}) {
      const auto maps = BuildCellMaps(spec, m, 3, 4, 1, nullptr);
      const GameTree a = AbstractGame(g, maps);
      if (!ValidateGame(a).empty()) failures.push_back(spec.ToString() + " abstraction invalid");
      ++validated;
      if (m == AbstractionMethod::kIdentity && !(ComputeSizeMetrics(a) == ComputeSizeMetrics(g))) {
        failures.push_back(spec.ToString() + " identity changed metrics");
      }
    }
  }
  // Refinement chains.
  const GameTree& kuhn = games[2].second;
  SizeMetrics prev{0, 0};
  for (int k = 1; k <= 256; k *= 2) {
    const auto m = ComputeSizeMetrics(
        AbstractGame(kuhn, std::vector{HandBucketingMap(ObservationDomain::kKuhnDeal, 256, k)}));
    if (m.num_sequences < prev.num_sequences || m.nnz < prev.nnz) {
      failures.push_back("kuhn refinement shrank at k=" + std::to_string(k));
    }
    prev = m;
  }
  const GameTree& leduc = games[5].second;
  prev = {0, 0};
  for (int k = 1; k <= 32; k *= 2) {
    const auto pre = HandBucketingMap(ObservationDomain::kLeducPreflop, 13, std::min(k, 26));
    const auto m = ComputeSizeMetrics(
        AbstractGame(leduc, std::vector{pre, NestedFlopHandBucketingMap(pre, k)}));
    if (m.num_sequences < prev.num_sequences || m.nnz < prev.nnz) {
      failures.push_back("leduc refinement shrank at k=" + std::to_string(k));
    }
    prev = m;
  }
  // Unused bucket ids change nothing.
  AbstractionMap dense = RandomMap(ObservationDomain::kKuhnDeal, 256, 20, 5);
  AbstractionMap gappy = dense;
  for (int& a : gappy.assignment) a = 7 * a + 3;
  if (!(ComputeSizeMetrics(AbstractGame(kuhn, std::vector{dense})) ==
        ComputeSizeMetrics(AbstractGame(kuhn, std::vector{gappy})))) {
    failures.push_back("empty buckets changed metrics");
  }
  std::string detail = Fmt("%d games/abstractions validated; refinement chains kuhn k=1..256 and "
                           "leduc k=1..32 monotone; identity and empty-bucket metrics unchanged",
                           validated);
  if (!failures.empty()) {
    detail = "violations:";
    for (const auto& f : failures) detail += " [" + f + "]";
  }
  return {failures.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "solver correctness", SolverCorrectness},
      {2, "sequence-form equivalence", SequenceFormEquivalence},
      {3, "kuhn(256) hand bucketing", KuhnHandBucketing},
      {4, "leduc(13) hand bucketing", LeducHandBucketing},
      {5, "baseline identity", BaselineIdentity},
      {6, "kmeans beats random", KMeansBeatsRandom},
      {7, "embedding neighbors", NeighborOrdinalGap},
      {8, "glove properties", GloveProperties},
      {9, "kmeans properties", KMeansProperties},
      {10, "structural invariants", StructuralInvariants},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    Stopwatch clock;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), clock.Seconds());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
