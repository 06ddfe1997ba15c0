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


#ifndef GAMEVEC_ABSTRACTION_H_
#define GAMEVEC_ABSTRACTION_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "gamevec/embedding.h"
#include "gamevec/game_tree.h"
#include "gamevec/games.h"
#include "gamevec/sequence_form.h"

namespace gamevec {

enum class AbstractionMethod { kKMeans, kRandom, kHandBucketing, kIdentity };

std::string_view MethodName(AbstractionMethod method);
AbstractionMethod ParseMethod(std::string_view name);

// Observation -> bucket assignment over one clustering domain.
struct AbstractionMap {
  ObservationDomain domain = ObservationDomain::kKuhnDeal;
  int game_size = 0;
  AbstractionMethod method = AbstractionMethod::kIdentity;
  int k = 1;  // requested
  std::uint64_t seed = 0;
  // Flop buckets nested inside preflop buckets: ids are local to the
  // player's preflop bucket, which the infoset key carries anyway.
  bool nested = false;
  std::vector<int> assignment;  // dense ids over non-empty buckets

  int NonEmptyBuckets() const;
};

// Bucket i.i.d. uniform over [0, k) per item.
std::vector<int> RandomAssignment(int n_items, int k, std::uint64_t seed);

// `ordered` is a permutation of 0..n-1, weakest first. Returns the bucket of
// each observation id: contiguous runs along the order, sizes differing by at
// most one with the remainder going to the earliest buckets. Throws Error
// when k < 1 or k > n.
std::vector<int> HandBucketing(std::span<const int> ordered, int k);

// Renumbers ids densely (ascending by original id) over used buckets.
std::vector<int> Densify(std::span<const int> assignment);

AbstractionMap IdentityMap(ObservationDomain domain, int game_size);
AbstractionMap RandomMap(ObservationDomain domain, int game_size, int k, std::uint64_t seed);

// Strength-ordered contiguous buckets. For the Kuhn deal domain the cards
// are bucketed and both players share the card buckets.
AbstractionMap HandBucketingMap(ObservationDomain domain, int game_size, int k);

// Leduc flop hand bucketing nested inside `preflop`: each preflop bucket's
// (hole, board) observations are split into min(k, size) contiguous
// strength buckets.
AbstractionMap NestedFlopHandBucketingMap(const AbstractionMap& preflop, int k);

// k-means over the vectors of the domain's observation tokens (Kuhn: all
// deal events jointly; Leduc: one domain per call). Throws Error listing
// missing tokens.
AbstractionMap EmbedClusterAbstraction(const EmbeddingTable& table, ObservationDomain domain,
                                       int game_size, int k, std::uint64_t seed);

// Relabels every infoset's observations with bucket ids, merging infosets
// that become identical. Topology, chance and utilities are unchanged.
// Throws Error when an observation has no covering map.
GameTree AbstractGame(const GameTree& game, std::span<const AbstractionMap> maps);

// Gives every original infoset the distribution of its abstract image.
BehavioralProfile LiftStrategy(const BehavioralProfile& abstract_profile,
                               const GameTree& abstract_game,
                               std::span<const AbstractionMap> maps, const GameTree& original);

// JSON: {"maps": [{"domain", "game_size", "method", "k", "seed", "nested",
// "num_nonempty", "assignment"}]}.
void SaveMaps(std::span<const AbstractionMap> maps, const std::filesystem::path& path);
std::vector<AbstractionMap> LoadMaps(const std::filesystem::path& path);

}  // namespace gamevec

#endif  // GAMEVEC_ABSTRACTION_H_
