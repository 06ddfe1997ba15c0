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

#ifndef GAMEVEC_SOLVER_H_
#define GAMEVEC_SOLVER_H_

#include <span>
#include <string_view>
#include <vector>

#include "gamevec/game_tree.h"
#include "gamevec/sequence_form.h"

namespace gamevec {

// Sequence form of a game with row- and column-major copies of the payoff
// matrix, for repeated gradient and best-response evaluation.
class SequenceFormGame {
 public:
  explicit SequenceFormGame(const GameTree& game);

  const GameTree& game() const { return game_; }
  const SequenceIndex& index() const { return index_; }
  const SparseUtilityMatrix& matrix() const { return matrix_; }
  std::int32_t dimension(Player p) const { return index_.dimension[p]; }
  // Largest |terminal utility|; 1 for games with all-zero payoffs.
  double payoff_scale() const { return payoff_scale_; }

  // Utility of `player` per own sequence against `other_plan`:
  // A y for player 0 and -Aᵀ x for player 1.
  void Gradient(Player player, std::span<const double> other_plan,
                std::vector<double>& out) const;

  // max over own plans of <Gradient(player, other_plan), plan>.
  double BestResponseValue(Player player, std::span<const double> other_plan) const;

  double Exploitability(std::span<const double> x, std::span<const double> y) const;
  double Exploitability(const BehavioralProfile& profile) const;

 private:
  const GameTree& game_;
  SequenceIndex index_;
  SparseUtilityMatrix matrix_;
  // CSR over rows (player 0 sequences) and over columns (player 1).
  std::vector<std::int64_t> row_start_, col_start_;
  std::vector<std::int32_t> row_cols_, col_rows_;
  std::vector<double> row_vals_, col_vals_;
  double payoff_scale_ = 1.0;
};

enum class SolverVariant { kCfr, kCfrPlus };

SolverVariant ParseSolverVariant(std::string_view name);
std::string_view SolverVariantName(SolverVariant variant);

struct SolveOptions {
  int max_iterations = 100000;
  double target_eps = 1e-6;
  SolverVariant variant = SolverVariant::kCfrPlus;
  // Exploitability of the average profile is checked this often.
  int check_every = 64;
  // Iterations per temperature of the entropy-regularized warm start; 0
  // starts regret minimization from zero regrets and uniform strategies.
  int warm_start_iterations = 0;
};

struct SolveReport {
  int iterations = 0;  // regret-minimization iterations
  int warm_start_iterations = 0;
  double exploitability = 0.0;
  SizeMetrics size;  // of the solved game
  double seconds = 0.0;
};

struct SolveResult {
  BehavioralProfile average;
  SolveReport report;
};

// Regret minimization with alternating updates. CFR+ uses regret matching+
// and linear averaging; CFR uses plain regret matching and uniform
// averaging. With a warm start, mirror descent on the game regularized
// toward uniform play (dilated entropy) is run at decreasing temperatures
// first, and regret minimization starts from its last iterate; among
// equivalent equilibria this favors the most mixed ones. Deterministic.
SolveResult Solve(const GameTree& game, const SolveOptions& options = {});

struct BestResponse {
  // Expected utility of `player` (u1 for player 0, -u1 for player 1).
  double value = 0.0;
  // Pure strategy on the responder's infosets; other entries empty.
  BehavioralProfile strategy;
};

// Tree-walk best response. Throws Error when `opponent` lacks an infoset of
// the other player.
BestResponse ComputeBestResponse(const GameTree& game, const BehavioralProfile& opponent,
                                 Player player);

// (BR value of player 1 + BR value of player 2) / 2, in sequence form.
double Exploitability(const GameTree& game, const BehavioralProfile& profile);

}  // namespace gamevec

#endif  // GAMEVEC_SOLVER_H_
