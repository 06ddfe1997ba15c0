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


#include "gamevec/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace gamevec {

SequenceFormGame::SequenceFormGame(const GameTree& game)
    : game_(game), index_(IndexSequences(game)), matrix_(BuildUtilityMatrix(game, index_)) {
  const std::int32_t rows = matrix_.rows;
  const std::int32_t cols = matrix_.cols;
  row_start_.assign(rows + 1, 0);
  col_start_.assign(cols + 1, 0);
  for (const UtilityEntry& e : matrix_.entries) {
    ++row_start_[e.row + 1];
    ++col_start_[e.col + 1];
  }
  for (std::int32_t r = 0; r < rows; ++r) row_start_[r + 1] += row_start_[r];
  for (std::int32_t c = 0; c < cols; ++c) col_start_[c + 1] += col_start_[c];
  row_cols_.resize(matrix_.nnz());
  row_vals_.resize(matrix_.nnz());
  col_rows_.resize(matrix_.nnz());
  col_vals_.resize(matrix_.nnz());
  std::vector<std::int64_t> col_fill(col_start_.begin(), col_start_.end() - 1);
  // Entries are sorted by (row, col), so rows fill in order.
  for (std::size_t k = 0; k < matrix_.entries.size(); ++k) {
    const UtilityEntry& e = matrix_.entries[k];
    row_cols_[k] = e.col;
    row_vals_[k] = e.value;
    const std::int64_t slot = col_fill[e.col]++;
    col_rows_[slot] = e.row;
    col_vals_[slot] = e.value;
  }
  double scale = 0.0;
  for (const Node& n : game.nodes()) {
    if (n.actor == Actor::kTerminal) scale = std::max(scale, std::abs(n.utility));
  }
  payoff_scale_ = scale > 0.0 ? scale : 1.0;
}

void SequenceFormGame::Gradient(Player player, std::span<const double> other_plan,
                                std::vector<double>& out) const {
  if (other_plan.size() != static_cast<std::size_t>(index_.dimension[1 - player])) {
    throw Error("gradient: plan has " + std::to_string(other_plan.size()) +
                " entries, expected " + std::to_string(index_.dimension[1 - player]));
  }
  out.assign(index_.dimension[player], 0.0);
  if (player == 0) {
    for (std::int32_t r = 0; r < matrix_.rows; ++r) {
      double v = 0.0;
      for (std::int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        v += row_vals_[k] * other_plan[row_cols_[k]];
      }
      out[r] = v;
    }
  } else {
    for (std::int32_t c = 0; c < matrix_.cols; ++c) {
      double v = 0.0;
      for (std::int64_t k = col_start_[c]; k < col_start_[c + 1]; ++k) {
        v += col_vals_[k] * other_plan[col_rows_[k]];
      }
      out[c] = -v;
    }
  }
}

double SequenceFormGame::BestResponseValue(Player player,
                                           std::span<const double> other_plan) const {
  std::vector<double> acc;
  Gradient(player, other_plan, acc);
  const auto& order = index_.order[player];
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::int32_t first = index_.first_seq[*it];
    const auto n = static_cast<std::int32_t>(game_.infoset(*it).actions.size());
    acc[index_.parent_seq[*it]] += *std::max_element(&acc[first], &acc[first] + n);
  }
  return acc[0];
}

double SequenceFormGame::Exploitability(std::span<const double> x,
                                        std::span<const double> y) const {
  return (BestResponseValue(0, y) + BestResponseValue(1, x)) / 2.0;
}

double SequenceFormGame::Exploitability(const BehavioralProfile& profile) const {
  const auto x = ToSequenceForm(game_, index_, profile, 0);
  const auto y = ToSequenceForm(game_, index_, profile, 1);
  return Exploitability(x, y);
}

SolverVariant ParseSolverVariant(std::string_view name) {
  if (name == "cfr") return SolverVariant::kCfr;
  if (name == "cfr_plus" || name == "cfr+") return SolverVariant::kCfrPlus;
  throw Error("unknown solver variant '" + std::string(name) + "'");
}

std::string_view SolverVariantName(SolverVariant variant) {
  return variant == SolverVariant::kCfr ? "cfr" : "cfr_plus";
}

namespace {

// Warm-start temperatures run from payoff_scale * kFirstTemperature down by
// factors of 10; the step size times the payoff scale is constant, so the
// schedule is invariant to payoff scaling.
constexpr int kTemperatures = 5;
constexpr double kFirstTemperature = 0.5;
constexpr double kStepSize = 0.4;
// Regrets after a warm start are this multiple of the warm strategy (per
// unit of payoff scale): small enough that regret matching moves freely.
constexpr double kWarmRegret = 0.005;

// Strategies are stored per sequence: entry s is the probability of the
// action that extends the parent sequence to s. Entry 0 is unused.
class RegretSolver {
 public:
  RegretSolver(const GameTree& game, const SolveOptions& options)
      : sf_(game), options_(options) {
    const SequenceIndex& index = sf_.index();
    for (Player p : {0, 1}) {
      const std::int32_t dim = index.dimension[p];
      strategy_[p].assign(dim, 0.0);
      regret_[p].assign(dim, 0.0);
      avg_[p].assign(dim, 0.0);
      plan_[p].assign(dim, 0.0);
      for (std::int32_t info : index.order[p]) {
        const int n = NumActions(info);
        for (int a = 0; a < n; ++a) strategy_[p][index.first_seq[info] + a] = 1.0 / n;
      }
      UpdatePlan(p);
    }
  }

  SolveResult Run() {
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    if (options_.warm_start_iterations > 0) {
      WarmStart();
      result.report.warm_start_iterations = kTemperatures * options_.warm_start_iterations;
    }
    const bool plus = options_.variant == SolverVariant::kCfrPlus;
    int t = 0;
    double eps = std::numeric_limits<double>::infinity();
    while (t < options_.max_iterations) {
      ++t;
      const double weight = plus ? t : 1.0;
      for (Player p : {0, 1}) {
        for (std::size_t s = 0; s < avg_[p].size(); ++s) avg_[p][s] += weight * plan_[p][s];
        sf_.Gradient(p, plan_[1 - p], grad_);
        AccumulateRegrets(p, plus);
        RegretMatch(p);
        UpdatePlan(p);
      }
      if (t % options_.check_every == 0 || t == options_.max_iterations) {
        eps = AverageExploitability();
        if (eps <= options_.target_eps) break;
      }
    }
    result.report.iterations = t;
    result.report.exploitability = eps;
    result.report.size = {sf_.dimension(0) + sf_.dimension(1),
                          static_cast<std::int64_t>(sf_.matrix().nnz())};
    for (Player p : {0, 1}) {
      FromSequenceForm(sf_.game(), sf_.index(), Normalized(p), p, result.average);
    }
    result.report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  int NumActions(std::int32_t info) const {
    return static_cast<int>(sf_.game().infoset(info).actions.size());
  }

  void UpdatePlan(Player p) {
    const SequenceIndex& index = sf_.index();
    auto& plan = plan_[p];
    plan[0] = 1.0;
    for (std::int32_t info : index.order[p]) {
      const double parent = plan[index.parent_seq[info]];
      const std::int32_t first = index.first_seq[info];
      for (int a = 0; a < NumActions(info); ++a) {
        plan[first + a] = parent * strategy_[p][first + a];
      }
    }
  }

  // Mirror descent with dilated-entropy proximal steps on the game
  // regularized by temperature * dilated entropy, at decreasing temperatures.
  void WarmStart() {
    const SequenceIndex& index = sf_.index();
    const double eta = kStepSize / sf_.payoff_scale();
    double temperature = kFirstTemperature * sf_.payoff_scale();
    std::vector<double> logits;
    for (int stage = 0; stage < kTemperatures; ++stage, temperature /= 10.0) {
      const double alpha = 1.0 + eta * temperature;
      for (int it = 0; it < options_.warm_start_iterations; ++it) {
        for (Player p : {0, 1}) {
          sf_.Gradient(p, plan_[1 - p], grad_);
          for (double& g : grad_) g *= eta;
          auto& sigma = strategy_[p];
          const auto& order = index.order[p];
          for (auto info = order.rbegin(); info != order.rend(); ++info) {
            const std::int32_t first = index.first_seq[*info];
            const int n = NumActions(*info);
            logits.resize(n);
            double top = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < n; ++a) {
              logits[a] = (grad_[first + a] + std::log(std::max(sigma[first + a], 1e-300))) / alpha;
              top = std::max(top, logits[a]);
            }
            double total = 0.0;
            for (int a = 0; a < n; ++a) {
              logits[a] = std::exp(logits[a] - top);
              total += logits[a];
            }
            for (int a = 0; a < n; ++a) sigma[first + a] = logits[a] / total;
            grad_[index.parent_seq[*info]] += alpha * (top + std::log(total));
          }
          UpdatePlan(p);
        }
      }
    }
    const double seed = kWarmRegret * sf_.payoff_scale();
    for (Player p : {0, 1}) {
      for (std::size_t s = 1; s < regret_[p].size(); ++s) regret_[p][s] = seed * strategy_[p][s];
    }
  }

  // grad_ holds the utility per own sequence; folds child values bottom-up.
  void AccumulateRegrets(Player p, bool plus) {
    const SequenceIndex& index = sf_.index();
    const auto& order = index.order[p];
    for (auto info = order.rbegin(); info != order.rend(); ++info) {
      const std::int32_t first = index.first_seq[*info];
      const int n = NumActions(*info);
      double v = 0.0;
      for (int a = 0; a < n; ++a) v += strategy_[p][first + a] * grad_[first + a];
      for (int a = 0; a < n; ++a) {
        double& r = regret_[p][first + a];
        r += grad_[first + a] - v;
        if (plus && r < 0.0) r = 0.0;
      }
      grad_[index.parent_seq[*info]] += v;
    }
  }

  void RegretMatch(Player p) {
    const SequenceIndex& index = sf_.index();
    for (std::int32_t info : index.order[p]) {
      const std::int32_t first = index.first_seq[info];
      const int n = NumActions(info);
      double total = 0.0;
      for (int a = 0; a < n; ++a) total += std::max(regret_[p][first + a], 0.0);
      for (int a = 0; a < n; ++a) {
        strategy_[p][first + a] =
            total > 0.0 ? std::max(regret_[p][first + a], 0.0) / total : 1.0 / n;
      }
    }
  }

  std::vector<double> Normalized(Player p) const {
    std::vector<double> plan = avg_[p];
    const double root = plan[0];
    for (double& x : plan) x /= root;
    return plan;
  }

  double AverageExploitability() const {
    return sf_.Exploitability(Normalized(0), Normalized(1));
  }

  SequenceFormGame sf_;
  SolveOptions options_;
  std::array<std::vector<double>, 2> strategy_, regret_, avg_, plan_;
  std::vector<double> grad_;
};

class BestResponder {
 public:
  BestResponder(const GameTree& game, const BehavioralProfile& opponent, Player player)
      : game_(game), opponent_(opponent), player_(player) {
    const auto num_nodes = game.nodes().size();
    reach_.assign(num_nodes, 0.0);
    value_.assign(num_nodes, std::numeric_limits<double>::quiet_NaN());
    best_.assign(game.infosets().size(), -1);
    members_.resize(game.infosets().size());
    reach_[0] = 1.0;
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
      const std::int32_t id = stack.back();
      stack.pop_back();
      const Node& n = game.node(id);
      if (n.actor == Actor::kTerminal) continue;
      if (n.actor != Actor::kChance) {
        const Player owner = PlayerOf(n.actor);
        if (owner == player_) {
          members_[n.infoset].push_back(id);
        } else if (opponent.probs.size() <= static_cast<std::size_t>(n.infoset) ||
                   opponent.probs[n.infoset].size() != static_cast<std::size_t>(n.num_edges)) {
          throw Error("profile missing infoset '" + game.infoset(n.infoset).key + "'");
        }
      }
      for (int a = 0; a < n.num_edges; ++a) {
        const Edge& e = game.edge(n, a);
        double w = 1.0;
        if (n.actor == Actor::kChance) {
          w = e.prob;
        } else if (PlayerOf(n.actor) != player_) {
          w = opponent.probs[n.infoset][a];
        }
        reach_[e.child] = reach_[id] * w;
        stack.push_back(e.child);
      }
    }
  }

  BestResponse Run() {
    BestResponse br;
    br.value = Value(0);
    br.strategy.probs.resize(game_.infosets().size());
    for (std::size_t i = 0; i < game_.infosets().size(); ++i) {
      const Infoset& info = game_.infosets()[i];
      if (info.player != player_) continue;
      const int best = best_[i] >= 0 ? best_[i] : BestAction(static_cast<std::int32_t>(i));
      br.strategy.probs[i].assign(info.actions.size(), 0.0);
      br.strategy.probs[i][best] = 1.0;
    }
    return br;
  }

 private:
  double Value(std::int32_t id) {
    double& memo = value_[id];
    if (!std::isnan(memo)) return memo;
    const Node& n = game_.node(id);
    double v = 0.0;
    switch (n.actor) {
      case Actor::kTerminal:
        v = player_ == 0 ? n.utility : -n.utility;
        break;
      case Actor::kChance:
        for (int a = 0; a < n.num_edges; ++a) {
          const Edge& e = game_.edge(n, a);
          if (e.prob > 0.0) v += e.prob * Value(e.child);
        }
        break;
      default:
        if (PlayerOf(n.actor) == player_) {
          v = Value(game_.edge(n, BestAction(n.infoset)).child);
        } else {
          const auto& sigma = opponent_.probs[n.infoset];
          for (int a = 0; a < n.num_edges; ++a) {
            if (sigma[a] > 0.0) v += sigma[a] * Value(game_.edge(n, a).child);
          }
        }
    }
    memo = v;
    return v;
  }

  int BestAction(std::int32_t info) {
    if (best_[info] >= 0) return best_[info];
    const auto num_actions = game_.infoset(info).actions.size();
    std::vector<double> q(num_actions, 0.0);
    for (std::int32_t id : members_[info]) {
      const double w = reach_[id];
      if (w <= 0.0) continue;
      const Node& n = game_.node(id);
      for (int a = 0; a < n.num_edges; ++a) q[a] += w * Value(game_.edge(n, a).child);
    }
    best_[info] = static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
    return best_[info];
  }

  const GameTree& game_;
  const BehavioralProfile& opponent_;
  Player player_;
  std::vector<double> reach_;
  std::vector<double> value_;
  std::vector<int> best_;
  std::vector<std::vector<std::int32_t>> members_;
};

}  // namespace

SolveResult Solve(const GameTree& game, const SolveOptions& options) {
  if (options.max_iterations < 1) throw Error("max_iterations must be >= 1");
  if (options.check_every < 1) throw Error("check_every must be >= 1");
  if (options.warm_start_iterations < 0) throw Error("warm_start_iterations must be >= 0");
  return RegretSolver(game, options).Run();
}

BestResponse ComputeBestResponse(const GameTree& game, const BehavioralProfile& opponent,
                                 Player player) {
  return BestResponder(game, opponent, player).Run();
}

double Exploitability(const GameTree& game, const BehavioralProfile& profile) {
  return SequenceFormGame(game).Exploitability(profile);
}

}  // namespace gamevec
