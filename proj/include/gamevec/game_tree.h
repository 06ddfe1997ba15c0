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


#ifndef GAMEVEC_GAME_TREE_H_
#define GAMEVEC_GAME_TREE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gamevec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Actor : std::uint8_t { kPlayer1, kPlayer2, kChance, kTerminal };

// Player index used throughout: 0 = row player (player 1), 1 = column player.
using Player = int;

inline Actor ActorOf(Player p) { return p == 0 ? Actor::kPlayer1 : Actor::kPlayer2; }
inline Player PlayerOf(Actor a) { return a == Actor::kPlayer1 ? 0 : 1; }

// The private observation spaces that abstraction may relabel.
enum class ObservationDomain : std::uint8_t {
  kKuhnDeal,      // (player, card) deal events, index = player * n + card
  kLeducPreflop,  // hole card index
  kLeducFlop,     // (hole, board) pair index
};

std::string_view DomainName(ObservationDomain domain);
ObservationDomain DomainFromName(std::string_view name);

// One private observation component of an infoset key. After abstraction
// `index` holds a bucket id and `bucketed` is set.
struct Observation {
  ObservationDomain domain = ObservationDomain::kKuhnDeal;
  std::int32_t index = 0;
  bool bucketed = false;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Infoset {
  std::string key;
  Player player = 0;
  std::vector<Observation> observations;
  std::string public_history;
  std::vector<std::string> actions;
};

// Key format: "P<player>|<obs>,<obs>|<public history>", where a raw
// observation prints as "<domain>:<index>" and a bucket as "<domain>#<id>".
std::string MakeInfosetKey(Player player, const std::vector<Observation>& observations,
                           std::string_view public_history);

struct Node {
  Actor actor = Actor::kTerminal;
  std::int32_t infoset = -1;    // decision nodes only
  std::int32_t first_edge = 0;  // edges [first_edge, first_edge + num_edges)
  std::int32_t num_edges = 0;
  double utility = 0.0;         // terminal u1 in chips; u2 = -u1
};

struct Edge {
  std::int32_t child = -1;
  std::int32_t label = -1;  // index into GameTree::labels()
  double prob = 0.0;        // chance edges only
};

class GameBuilder;

// A two-player zero-sum extensive-form game stored as flat node/edge arrays.
// Node 0 is the root. Immutable once built.
class GameTree {
 public:
  GameTree() = default;

  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Infoset>& infosets() const { return infosets_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const Node& node(std::int32_t id) const { return nodes_[id]; }
  const Infoset& infoset(std::int32_t id) const { return infosets_[id]; }
  const Edge& edge(const Node& n, int a) const { return edges_[n.first_edge + a]; }
  const std::string& label(const Edge& e) const { return labels_[e.label]; }

  // -1 when absent.
  std::int32_t FindInfoset(std::string_view key) const;

  std::size_t num_terminals() const;

  // Same topology, chance and utilities; infosets replaced. Every decision
  // node's infoset id is mapped through `node_infoset_map` (old id -> new id).
  GameTree WithInfosets(std::string name, std::vector<Infoset> infosets,
                        const std::vector<std::int32_t>& node_infoset_map) const;

 private:
  friend class GameBuilder;

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Infoset> infosets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::int32_t> infoset_by_key_;
};

// Incremental construction. Edges of a node are reserved when the node is
// created so each node's edges stay contiguous.
class GameBuilder {
 public:
  explicit GameBuilder(std::string name);

  // Returns the infoset id for (player, observations, public history),
  // creating it with `actions` if new. Existing infosets keep their original
  // action list; mismatches surface in ValidateGame.
  std::int32_t InternInfoset(Player player, std::vector<Observation> observations,
                             std::string public_history,
                             const std::vector<std::string>& actions);

  std::int32_t AddDecision(std::int32_t infoset, int num_actions);
  // Player given explicitly; lets tests build nodes whose actor disagrees
  // with the infoset owner.
  std::int32_t AddDecision(Actor actor, std::int32_t infoset, int num_actions);
  std::int32_t AddChance(int num_outcomes);
  std::int32_t AddTerminal(double u1);

  // Connects outcome `slot` of `parent` to `child`.
  void SetEdge(std::int32_t parent, int slot, std::int32_t child, std::string_view label,
               double prob = 0.0);

  GameTree Build() &&;

 private:
  std::int32_t AddNode(Actor actor, std::int32_t infoset, int num_edges);
  std::int32_t InternLabel(std::string_view label);

  GameTree game_;
  std::unordered_map<std::string, std::int32_t> label_ids_;
};

// Every invariant violation found; empty when the game is well formed.
std::vector<std::string> ValidateGame(const GameTree& game);

// Throws Error listing every violation.
void RequireValidGame(const GameTree& game);

}  // namespace gamevec

#endif  // GAMEVEC_GAME_TREE_H_
