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


#include "gamevec/game_tree.h"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

namespace gamevec {

std::string_view DomainName(ObservationDomain domain) {
  switch (domain) {
    case ObservationDomain::kKuhnDeal:
      return "kuhn-deal";
    case ObservationDomain::kLeducPreflop:
      return "leduc-preflop";
    case ObservationDomain::kLeducFlop:
      return "leduc-flop";
  }
  return "unknown";
}

ObservationDomain DomainFromName(std::string_view name) {
  if (name == "kuhn-deal") return ObservationDomain::kKuhnDeal;
  if (name == "leduc-preflop") return ObservationDomain::kLeducPreflop;
  if (name == "leduc-flop") return ObservationDomain::kLeducFlop;
  throw Error("unknown observation domain '" + std::string(name) + "'");
}

std::string MakeInfosetKey(Player player, const std::vector<Observation>& observations,
                           std::string_view public_history) {
  std::string key = "P";
  key += std::to_string(player + 1);
  key += '|';
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (i > 0) key += ',';
    key += DomainName(observations[i].domain);
    key += observations[i].bucketed ? '#' : ':';
    key += std::to_string(observations[i].index);
  }
  key += '|';
  key += public_history;
  return key;
}

std::int32_t GameTree::FindInfoset(std::string_view key) const {
  auto it = infoset_by_key_.find(std::string(key));
  return it == infoset_by_key_.end() ? -1 : it->second;
}

std::size_t GameTree::num_terminals() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += n.actor == Actor::kTerminal;
  return count;
}

GameTree GameTree::WithInfosets(std::string name, std::vector<Infoset> infosets,
                                const std::vector<std::int32_t>& node_infoset_map) const {
  GameTree out;
  out.name_ = std::move(name);
  out.nodes_ = nodes_;
  out.edges_ = edges_;
  out.labels_ = labels_;
  out.infosets_ = std::move(infosets);
  for (Node& n : out.nodes_) {
    if (n.infoset >= 0) n.infoset = node_infoset_map.at(n.infoset);
  }
  for (std::size_t i = 0; i < out.infosets_.size(); ++i) {
    out.infoset_by_key_.emplace(out.infosets_[i].key, static_cast<std::int32_t>(i));
  }
  return out;
}

GameBuilder::GameBuilder(std::string name) { game_.name_ = std::move(name); }

std::int32_t GameBuilder::InternInfoset(Player player, std::vector<Observation> observations,
                                        std::string public_history,
                                        const std::vector<std::string>& actions) {
  std::string key = MakeInfosetKey(player, observations, public_history);
  auto [it, inserted] =
      game_.infoset_by_key_.emplace(key, static_cast<std::int32_t>(game_.infosets_.size()));
  if (inserted) {
    game_.infosets_.push_back(Infoset{std::move(key), player, std::move(observations),
                                      std::move(public_history), actions});
  }
  return it->second;
}

std::int32_t GameBuilder::AddNode(Actor actor, std::int32_t infoset, int num_edges) {
  Node n;
  n.actor = actor;
  n.infoset = infoset;
  n.first_edge = static_cast<std::int32_t>(game_.edges_.size());
  n.num_edges = num_edges;
  game_.edges_.resize(game_.edges_.size() + num_edges);
  game_.nodes_.push_back(n);
  return static_cast<std::int32_t>(game_.nodes_.size() - 1);
}

std::int32_t GameBuilder::AddDecision(std::int32_t infoset, int num_actions) {
  return AddDecision(ActorOf(game_.infosets_.at(infoset).player), infoset, num_actions);
}

std::int32_t GameBuilder::AddDecision(Actor actor, std::int32_t infoset, int num_actions) {
  return AddNode(actor, infoset, num_actions);
}

std::int32_t GameBuilder::AddChance(int num_outcomes) {
  return AddNode(Actor::kChance, -1, num_outcomes);
}

std::int32_t GameBuilder::AddTerminal(double u1) {
  std::int32_t id = AddNode(Actor::kTerminal, -1, 0);
  game_.nodes_[id].utility = u1;
  return id;
}

std::int32_t GameBuilder::InternLabel(std::string_view label) {
  auto [it, inserted] =
      label_ids_.emplace(std::string(label), static_cast<std::int32_t>(game_.labels_.size()));
  if (inserted) game_.labels_.emplace_back(label);
  return it->second;
}

void GameBuilder::SetEdge(std::int32_t parent, int slot, std::int32_t child,
                          std::string_view label, double prob) {
  const Node& p = game_.nodes_.at(parent);
  if (slot < 0 || slot >= p.num_edges) throw Error("edge slot out of range");
  Edge& e = game_.edges_[p.first_edge + slot];
  e.child = child;
  e.label = InternLabel(label);
  e.prob = prob;
}

GameTree GameBuilder::Build() && { return std::move(game_); }

namespace {

// Last (infoset, action) pair of one player along the path; (-1, -1) is the
// empty sequence.
struct SeqTag {
  std::int32_t infoset = -1;
  std::int32_t action = -1;
  friend bool operator==(const SeqTag&, const SeqTag&) = default;
};

class Validator {
 public:
  explicit Validator(const GameTree& game)
      : game_(game),
        parent_tag_(game.infosets().size()),
        tag_seen_(game.infosets().size(), false),
        parent_count_(game.nodes().size(), 0) {}

  std::vector<std::string> Run() {
    if (game_.nodes().empty()) {
      violations_.push_back("game has no nodes");
      return violations_;
    }
    for (std::size_t i = 0; i < game_.infosets().size(); ++i) {
      const Infoset& info = game_.infosets()[i];
      if (info.player != 0 && info.player != 1) {
        Report("infoset '" + info.key + "' has invalid player " + std::to_string(info.player));
      }
      if (info.actions.empty()) Report("infoset '" + info.key + "' has no actions");
    }
    Walk(0, {SeqTag{}, SeqTag{}}, 0);
    for (std::size_t i = 1; i < game_.nodes().size(); ++i) {
      if (parent_count_[i] != 1) {
        Report("node " + std::to_string(i) + " has " + std::to_string(parent_count_[i]) +
               " parents");
      }
    }
    return violations_;
  }

 private:
  void Report(std::string message) { violations_.push_back(std::move(message)); }

  void Walk(std::int32_t id, std::array<SeqTag, 2> tags, int depth) {
    if (depth > 10000) {
      Report("tree depth exceeds 10000 (cycle?)");
      return;
    }
    const Node& n = game_.node(id);
    switch (n.actor) {
      case Actor::kTerminal:
        if (!std::isfinite(n.utility)) {
          Report("terminal node " + std::to_string(id) + " has non-finite utility");
        }
        if (n.num_edges != 0) Report("terminal node " + std::to_string(id) + " has children");
        return;
      case Actor::kChance: {
        if (n.num_edges == 0) Report("chance node " + std::to_string(id) + " has no outcomes");
        double total = 0.0;
        for (int a = 0; a < n.num_edges; ++a) {
          double p = game_.edge(n, a).prob;
          if (!(p >= 0.0)) {
            Report("chance node " + std::to_string(id) + " has negative probability");
          }
          total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
          std::ostringstream os;
          os.precision(17);
          os << "chance node " << id << " probabilities sum to " << total;
          Report(os.str());
        }
        for (int a = 0; a < n.num_edges; ++a) Visit(game_.edge(n, a).child, tags, depth);
        return;
      }
      case Actor::kPlayer1:
      case Actor::kPlayer2: {
        if (n.infoset < 0 || n.infoset >= static_cast<std::int32_t>(game_.infosets().size())) {
          Report("decision node " + std::to_string(id) + " has no infoset");
          return;
        }
        const Infoset& info = game_.infoset(n.infoset);
        Player p = PlayerOf(n.actor);
        if (info.player != p) {
          Report("infoset '" + info.key + "' contains nodes of different actors");
        }
        bool same_actions = static_cast<std::size_t>(n.num_edges) == info.actions.size();
        for (int a = 0; same_actions && a < n.num_edges; ++a) {
          same_actions = game_.label(game_.edge(n, a)) == info.actions[a];
        }
        if (!same_actions) {
          Report("infoset '" + info.key + "' has mismatched action lists at node " +
                 std::to_string(id));
        }
        if (!tag_seen_[n.infoset]) {
          tag_seen_[n.infoset] = true;
          parent_tag_[n.infoset] = tags[p];
        } else if (!(parent_tag_[n.infoset] == tags[p])) {
          Report("perfect recall violated at infoset '" + info.key + "'");
        }
        for (int a = 0; a < n.num_edges; ++a) {
          auto child_tags = tags;
          child_tags[p] = SeqTag{n.infoset, a};
          Visit(game_.edge(n, a).child, child_tags, depth);
        }
        return;
      }
    }
  }

  void Visit(std::int32_t child, const std::array<SeqTag, 2>& tags, int depth) {
    if (child <= 0 || child >= static_cast<std::int32_t>(game_.nodes().size())) {
      Report("edge points to invalid node " + std::to_string(child));
      return;
    }
    if (++parent_count_[child] > 1) return;
    Walk(child, tags, depth + 1);
  }

  const GameTree& game_;
  std::vector<SeqTag> parent_tag_;
  std::vector<bool> tag_seen_;
  std::vector<int> parent_count_;
  std::vector<std::string> violations_;
};

}  // namespace

std::vector<std::string> ValidateGame(const GameTree& game) { return Validator(game).Run(); }

void RequireValidGame(const GameTree& game) {
  auto violations = ValidateGame(game);
  if (violations.empty()) return;
  std::string msg = "invalid game '" + game.name() + "':";
  for (const auto& v : violations) msg += "\n  " + v;
  throw Error(msg);
}

}  // namespace gamevec
