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


#include "gamevec/sequence_form.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace gamevec {

BehavioralProfile BehavioralProfile::Uniform(const GameTree& game) {
  BehavioralProfile profile;
  profile.probs.reserve(game.infosets().size());
  for (const Infoset& info : game.infosets()) {
    const auto n = info.actions.size();
    profile.probs.emplace_back(n, 1.0 / static_cast<double>(n));
  }
  return profile;
}

bool BehavioralProfile::Covers(const GameTree& game, Player player) const {
  if (probs.size() != game.infosets().size()) return false;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const Infoset& info = game.infosets()[i];
    if (info.player == player && probs[i].size() != info.actions.size()) return false;
  }
  return true;
}

namespace {

void IndexWalk(const GameTree& game, std::int32_t id, std::array<std::int32_t, 2> parents,
               SequenceIndex& index) {
  const Node& n = game.node(id);
  if (n.actor == Actor::kTerminal) return;
  if (n.actor == Actor::kChance) {
    for (int a = 0; a < n.num_edges; ++a) IndexWalk(game, game.edge(n, a).child, parents, index);
    return;
  }
  const Player p = PlayerOf(n.actor);
  const std::int32_t info = n.infoset;
  if (index.first_seq[info] < 0) {
    index.parent_seq[info] = parents[p];
    index.first_seq[info] = index.dimension[p];
    index.dimension[p] += n.num_edges;
    index.order[p].push_back(info);
  } else if (index.parent_seq[info] != parents[p]) {
    throw Error("imperfect recall at infoset '" + game.infoset(info).key + "'");
  }
  for (int a = 0; a < n.num_edges; ++a) {
    auto child_parents = parents;
    child_parents[p] = index.first_seq[info] + a;
    IndexWalk(game, game.edge(n, a).child, child_parents, index);
  }
}

struct CellHash {
  std::size_t operator()(std::int64_t v) const noexcept { return std::hash<std::int64_t>{}(v); }
};

void MatrixWalk(const GameTree& game, const SequenceIndex& index, std::int32_t id,
                std::int32_t row, std::int32_t col, double chance_reach,
                std::unordered_map<std::int64_t, double, CellHash>& cells) {
  const Node& n = game.node(id);
  switch (n.actor) {
    case Actor::kTerminal: {
      const std::int64_t key = (static_cast<std::int64_t>(row) << 32) | static_cast<std::uint32_t>(col);
      cells[key] += chance_reach * n.utility;
      return;
    }
    case Actor::kChance:
      for (int a = 0; a < n.num_edges; ++a) {
        const Edge& e = game.edge(n, a);
        MatrixWalk(game, index, e.child, row, col, chance_reach * e.prob, cells);
      }
      return;
    case Actor::kPlayer1:
      for (int a = 0; a < n.num_edges; ++a) {
        MatrixWalk(game, index, game.edge(n, a).child, index.sequence(n.infoset, a), col,
                   chance_reach, cells);
      }
      return;
    case Actor::kPlayer2:
      for (int a = 0; a < n.num_edges; ++a) {
        MatrixWalk(game, index, game.edge(n, a).child, row, index.sequence(n.infoset, a),
                   chance_reach, cells);
      }
      return;
  }
}

double TreeWalk(const GameTree& game, const BehavioralProfile& profile, std::int32_t id) {
  const Node& n = game.node(id);
  if (n.actor == Actor::kTerminal) return n.utility;
  double value = 0.0;
  if (n.actor == Actor::kChance) {
    for (int a = 0; a < n.num_edges; ++a) {
      const Edge& e = game.edge(n, a);
      value += e.prob * TreeWalk(game, profile, e.child);
    }
    return value;
  }
  const auto& sigma = profile.probs.at(n.infoset);
  for (int a = 0; a < n.num_edges; ++a) {
    if (sigma[a] != 0.0) value += sigma[a] * TreeWalk(game, profile, game.edge(n, a).child);
  }
  return value;
}

}  // namespace

SequenceIndex IndexSequences(const GameTree& game) {
  SequenceIndex index;
  index.parent_seq.assign(game.infosets().size(), -1);
  index.first_seq.assign(game.infosets().size(), -1);
  IndexWalk(game, 0, {0, 0}, index);
  return index;
}

SparseUtilityMatrix BuildUtilityMatrix(const GameTree& game, const SequenceIndex& index) {
  std::unordered_map<std::int64_t, double, CellHash> cells;
  cells.reserve(game.num_terminals());
  MatrixWalk(game, index, 0, 0, 0, 1.0, cells);
  SparseUtilityMatrix matrix;
  matrix.rows = index.dimension[0];
  matrix.cols = index.dimension[1];
  matrix.entries.reserve(cells.size());
  for (const auto& [key, value] : cells) {
    if (std::abs(value) < kUtilityDropThreshold) continue;
    matrix.entries.push_back(UtilityEntry{static_cast<std::int32_t>(key >> 32),
                                          static_cast<std::int32_t>(key & 0xffffffff), value});
  }
  std::sort(matrix.entries.begin(), matrix.entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return matrix;
}

double ExpectedUtility(const SparseUtilityMatrix& matrix, std::span<const double> x,
                       std::span<const double> y) {
  if (x.size() != static_cast<std::size_t>(matrix.rows) ||
      y.size() != static_cast<std::size_t>(matrix.cols)) {
    throw Error("expected_utility: dimension mismatch (matrix " + std::to_string(matrix.rows) +
                "x" + std::to_string(matrix.cols) + ", x " + std::to_string(x.size()) + ", y " +
                std::to_string(y.size()) + ")");
  }
  double total = 0.0;
  for (const UtilityEntry& e : matrix.entries) total += e.value * x[e.row] * y[e.col];
  return total;
}

SizeMetrics ComputeSizeMetrics(const GameTree& game) {
  SequenceIndex index = IndexSequences(game);
  SparseUtilityMatrix matrix = BuildUtilityMatrix(game, index);
  return SizeMetrics{index.dimension[0] + index.dimension[1],
                     static_cast<std::int64_t>(matrix.nnz())};
}

std::vector<double> ToSequenceForm(const GameTree& game, const SequenceIndex& index,
                                   const BehavioralProfile& profile, Player player) {
  std::vector<double> plan(index.dimension[player], 0.0);
  plan[0] = 1.0;
  for (std::int32_t info : index.order[player]) {
    const auto& sigma = profile.probs.at(info);
    if (sigma.size() != game.infoset(info).actions.size()) {
      throw Error("profile missing infoset '" + game.infoset(info).key + "'");
    }
    const double parent = plan[index.parent_seq[info]];
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      plan[index.first_seq[info] + a] = parent * sigma[a];
    }
  }
  return plan;
}

void FromSequenceForm(const GameTree& game, const SequenceIndex& index,
                      std::span<const double> plan, Player player, BehavioralProfile& profile) {
  profile.probs.resize(game.infosets().size());
  for (std::int32_t info : index.order[player]) {
    const auto n = game.infoset(info).actions.size();
    const double parent = plan[index.parent_seq[info]];
    auto& sigma = profile.probs[info];
    sigma.assign(n, 1.0 / static_cast<double>(n));
    if (parent <= 0.0) continue;
    for (std::size_t a = 0; a < n; ++a) sigma[a] = plan[index.first_seq[info] + a] / parent;
  }
}

double FlowViolation(const SequenceIndex& index, std::span<const double> plan, Player player) {
  double worst = std::abs(plan[0] - 1.0);
  const auto& order = index.order[player];
  // Sequence ids are handed out in `order`, so each infoset's block ends
  // where the next one starts.
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::int32_t first = index.first_seq[order[k]];
    const std::int32_t end =
        k + 1 < order.size() ? index.first_seq[order[k + 1]] : index.dimension[player];
    double mass = 0.0;
    for (std::int32_t s = first; s < end; ++s) mass += plan[s];
    worst = std::max(worst, std::abs(mass - plan[index.parent_seq[order[k]]]));
  }
  return worst;
}

double TreeWalkUtility(const GameTree& game, const BehavioralProfile& profile) {
  return TreeWalk(game, profile, 0);
}

}  // namespace gamevec
