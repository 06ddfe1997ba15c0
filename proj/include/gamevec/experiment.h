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


#ifndef GAMEVEC_EXPERIMENT_H_
#define GAMEVEC_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gamevec/abstraction.h"
#include "gamevec/analysis.h"
#include "gamevec/glove.h"
#include "gamevec/games.h"
#include "gamevec/remote.h"
#include "gamevec/solver.h"

namespace gamevec {

struct EmbeddingSource {
  enum class Kind { kNone, kFile, kTrain, kRemote };
  Kind kind = Kind::kNone;
  std::filesystem::path path;  // kFile: embedding file; kTrain: corpus (optional)
  // kTrain without a corpus: sample this many hands from an equilibrium of
  // the game solved to sample_solve_eps.
  std::int64_t sample_hands = 1000000;
  std::uint64_t sample_seed = 1;
  double sample_solve_eps = 1e-6;
  bool payoff_token = true;
  GloveParams glove;
  ProviderConfig provider;  // kRemote
  std::filesystem::path cache_dir;
  // Required for providers other than "mock".
  bool allow_network = false;
};

// Defaults used by the experiment runner and CLI: CFR+ to 1e-6 (cap 1e5)
// after the entropy-regularized warm start.
SolveOptions ExperimentSolveOptions();

struct ExperimentConfig {
  GameSpec game;
  EmbeddingSource embedding;
  std::vector<AbstractionMethod> methods;
  std::vector<int> k1;  // Kuhn: k
  std::vector<int> k2;  // Leduc only
  std::vector<int> seeds;
  std::uint64_t base_seed = 0;
  SolveOptions solver = ExperimentSolveOptions();
  int threads = 1;
  std::filesystem::path output_dir = "results";

  void Validate() const;
};

// JSON document; see README for the schema. Throws Error naming the field.
ExperimentConfig ParseExperimentConfig(const std::string& text);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// hash(base_seed, method, k1, k2, seed): grid additions never perturb cells.
std::uint64_t CellSeed(std::uint64_t base_seed, AbstractionMethod method, int k1, int k2, int seed);

// Builds the abstraction maps of one cell. Requested k values above a
// domain's size are clamped to it; `table` is needed only for kmeans.
std::vector<AbstractionMap> BuildCellMaps(const GameSpec& game, AbstractionMethod method, int k1,
                                          int k2, std::uint64_t cell_seed,
                                          const EmbeddingTable* table);

// Solves the abstract game, lifts the average profile and measures it in
// the original game; size metrics are those of the abstract game.
ExperimentRecord EvaluateMaps(const GameSpec& spec, const GameTree& game,
                              const std::vector<AbstractionMap>& maps, const std::string& method,
                              int k1, int k2, int seed, const SolveOptions& solver);

// Resolves the embedding source (writing trained or fetched tables into
// `output_dir`). Returns nullopt for kNone.
std::optional<EmbeddingTable> ResolveEmbeddings(const ExperimentConfig& config,
                                                const GameTree& game);

// Runs every (method, k1, k2, seed) cell; records sorted by
// (method, k1, k2, seed). Errors name the failing cell.
std::vector<ExperimentRecord> RunExperiment(const ExperimentConfig& config);

// results.csv and summary.csv under config.output_dir.
void WriteExperimentOutputs(const ExperimentConfig& config,
                            const std::vector<ExperimentRecord>& records);

}  // namespace gamevec

#endif  // GAMEVEC_EXPERIMENT_H_
