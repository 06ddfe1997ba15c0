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


#ifndef GAMEVEC_SEQUENCE_FORM_H_
#define GAMEVEC_SEQUENCE_FORM_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gamevec/game_tree.h"

namespace gamevec {

// Behavioral strategies for both players, indexed by infoset id of one game.
// An empty entry means "not specified".
struct BehavioralProfile {
  std::vector<std::vector<double>> probs;

  static BehavioralProfile Uniform(const GameTree& game);
  bool Covers(const GameTree& game, Player player) const;
};

struct SequenceIndex {
  // Per infoset id (of either player): the owning player's parent sequence
  // and the id of the sequence for action 0; action a has id first_seq + a.
  std::vector<std::int32_t> parent_seq;
  std::vector<std::int32_t> first_seq;
  // Infosets of each player in id-assignment (depth-first) order.
  std::array<std::vector<std::int32_t>, 2> order;
  // Count of sequences per player, including the empty sequence (id 0).
  std::array<std::int32_t, 2> dimension{1, 1};

  std::int32_t sequence(std::int32_t infoset, int action) const {
    return first_seq[infoset] + action;
  }
};

struct UtilityEntry {
  std::int32_t row;
  std::int32_t col;
  double value;
};

// Sparse sequence-form payoff matrix for player 1, sorted by (row, col).
struct SparseUtilityMatrix {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  std::vector<UtilityEntry> entries;

  std::size_t nnz() const { return entries.size(); }
};

struct SizeMetrics {
  std::int64_t num_sequences = 0;
  std::int64_t nnz = 0;

  friend bool operator==(const SizeMetrics&, const SizeMetrics&) = default;
};

// Cells whose aggregated value is below this magnitude are not stored.
inline constexpr double kUtilityDropThreshold = 1e-15;

// Throws Error naming the infoset when the game lacks perfect recall.
SequenceIndex IndexSequences(const GameTree& game);

SparseUtilityMatrix BuildUtilityMatrix(const GameTree& game, const SequenceIndex& index);

// xᵀ A y. Throws on dimension mismatch.
double ExpectedUtility(const SparseUtilityMatrix& matrix, std::span<const double> x,
                       std::span<const double> y);

SizeMetrics ComputeSizeMetrics(const GameTree& game);

// Realization plan of `player` under `profile`.
std::vector<double> ToSequenceForm(const GameTree& game, const SequenceIndex& index,
                                   const BehavioralProfile& profile, Player player);

// Writes the behavioral strategy of `player` encoded by `plan` into
// `profile`. Infosets with zero parent mass get the uniform distribution.
void FromSequenceForm(const GameTree& game, const SequenceIndex& index,
                      std::span<const double> plan, Player player, BehavioralProfile& profile);

// Largest violation of the flow constraints (x[empty] = 1, children sum to
// parent) for the realization plan of `player`.
double FlowViolation(const SequenceIndex& index, std::span<const double> plan, Player player);

// Expected u1 by recursive tree walk. Used as an independent reference for
// ExpectedUtility.
double TreeWalkUtility(const GameTree& game, const BehavioralProfile& profile);

}  // namespace gamevec

#endif  // GAMEVEC_SEQUENCE_FORM_H_
