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


#include "gamevec/abstraction.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <unordered_map>

#include "gamevec/kmeans.h"
#include "gamevec/random.h"
#include "json.hpp"

namespace gamevec {

std::string_view MethodName(AbstractionMethod method) {
  switch (method) {
    case AbstractionMethod::kKMeans:
      return "kmeans";
    case AbstractionMethod::kRandom:
      return "random";
    case AbstractionMethod::kHandBucketing:
      return "hand_bucketing";
    case AbstractionMethod::kIdentity:
      return "identity";
  }
  return "unknown";
}

AbstractionMethod ParseMethod(std::string_view name) {
  if (name == "kmeans") return AbstractionMethod::kKMeans;
  if (name == "random") return AbstractionMethod::kRandom;
  if (name == "hand_bucketing") return AbstractionMethod::kHandBucketing;
  if (name == "identity") return AbstractionMethod::kIdentity;
  throw Error("unknown abstraction method '" + std::string(name) + "'");
}

int AbstractionMap::NonEmptyBuckets() const {
  std::vector<int> ids(assignment);
  std::sort(ids.begin(), ids.end());
  return static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

std::vector<int> RandomAssignment(int n_items, int k, std::uint64_t seed) {
  if (k < 1) throw Error("random assignment: k must be >= 1");
  Rng rng(seed);
  std::vector<int> out(n_items);
  for (int& b : out) b = static_cast<int>(rng.Below(static_cast<std::uint64_t>(k)));
  return out;
}

std::vector<int> HandBucketing(std::span<const int> ordered, int k) {
  const int n = static_cast<int>(ordered.size());
  if (k < 1) throw Error("hand bucketing: k must be >= 1");
  if (k > n) {
    throw Error("hand bucketing: k = " + std::to_string(k) + " exceeds " + std::to_string(n) +
                " observations");
  }
  std::vector<int> out(n, -1);
  const int base = n / k;
  const int extra = n % k;
  int pos = 0;
  for (int b = 0; b < k; ++b) {
    const int size = base + (b < extra ? 1 : 0);
    for (int i = 0; i < size; ++i) out.at(ordered[pos++]) = b;
  }
  return out;
}

std::vector<int> Densify(std::span<const int> assignment) {
  std::vector<int> ids(assignment.begin(), assignment.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<int> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), assignment[i]) -
                              ids.begin());
  }
  return out;
}

AbstractionMap IdentityMap(ObservationDomain domain, int game_size) {
  AbstractionMap map;
  map.domain = domain;
  map.game_size = game_size;
  map.method = AbstractionMethod::kIdentity;
  map.k = DomainSize(domain, game_size);
  map.assignment.resize(map.k);
  std::iota(map.assignment.begin(), map.assignment.end(), 0);
  return map;
}

AbstractionMap RandomMap(ObservationDomain domain, int game_size, int k, std::uint64_t seed) {
  AbstractionMap map;
  map.domain = domain;
  map.game_size = game_size;
  map.method = AbstractionMethod::kRandom;
  map.k = k;
  map.seed = seed;
  map.assignment = Densify(RandomAssignment(DomainSize(domain, game_size), k, seed));
  return map;
}

AbstractionMap HandBucketingMap(ObservationDomain domain, int game_size, int k) {
  AbstractionMap map;
  map.domain = domain;
  map.game_size = game_size;
  map.method = AbstractionMethod::kHandBucketing;
  map.k = k;
  switch (domain) {
    case ObservationDomain::kKuhnDeal: {
      auto cards = HandBucketing(StrengthOrder(StrengthKind::kKuhn, game_size), k);
      map.assignment.resize(2 * game_size);
      for (int c = 0; c < game_size; ++c) {
        map.assignment[c] = cards[c];
        map.assignment[game_size + c] = cards[c];
      }
      break;
    }
    case ObservationDomain::kLeducPreflop:
      map.assignment = HandBucketing(StrengthOrder(StrengthKind::kLeducPreflop, game_size), k);
      break;
    case ObservationDomain::kLeducFlop:
      map.assignment = HandBucketing(StrengthOrder(StrengthKind::kLeducFlop, game_size), k);
      break;
  }
  return map;
}

AbstractionMap NestedFlopHandBucketingMap(const AbstractionMap& preflop, int k) {
  if (preflop.domain != ObservationDomain::kLeducPreflop) {
    throw Error("nested flop bucketing needs a leduc-preflop map");
  }
  if (k < 1) throw Error("hand bucketing: k must be >= 1");
  const int game_size = preflop.game_size;
  const int deck = 2 * game_size;
  AbstractionMap map;
  map.domain = ObservationDomain::kLeducFlop;
  map.game_size = game_size;
  map.method = AbstractionMethod::kHandBucketing;
  map.k = k;
  map.nested = true;
  map.assignment.assign(DomainSize(map.domain, game_size), -1);

  std::map<int, std::vector<int>> by_parent;
  for (int obs : StrengthOrder(StrengthKind::kLeducFlop, game_size)) {
    const int hole = LeducPairCards(obs, deck).first;
    by_parent[preflop.assignment.at(hole)].push_back(obs);
  }
  for (const auto& [parent, members] : by_parent) {
    const int local_k = std::min<int>(k, static_cast<int>(members.size()));
    std::vector<int> local(members.size());
    std::iota(local.begin(), local.end(), 0);
    const auto buckets = HandBucketing(local, local_k);
    for (std::size_t i = 0; i < members.size(); ++i) map.assignment[members[i]] = buckets[i];
  }
  return map;
}

AbstractionMap EmbedClusterAbstraction(const EmbeddingTable& table, ObservationDomain domain,
                                       int game_size, int k, std::uint64_t seed) {
  const int n = DomainSize(domain, game_size);
  std::vector<std::vector<double>> points;
  points.reserve(n);
  std::vector<std::string> missing;
  for (int i = 0; i < n; ++i) {
    std::string token = ObservationToken(domain, i, game_size);
    if (const auto* v = table.Find(token)) {
      points.push_back(*v);
    } else {
      missing.push_back(std::move(token));
    }
  }
  if (!missing.empty()) {
    std::string msg = "embedding table lacks " + std::to_string(missing.size()) + " token(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw Error(msg);
  }
  AbstractionMap map;
  map.domain = domain;
  map.game_size = game_size;
  map.method = AbstractionMethod::kKMeans;
  map.k = k;
  map.seed = seed;
  map.assignment = Densify(KMeans(points, k, seed).assignments);
  return map;
}

namespace {

const AbstractionMap& MapFor(std::span<const AbstractionMap> maps, ObservationDomain domain) {
  const AbstractionMap* found = nullptr;
  for (const auto& m : maps) {
    if (m.domain != domain) continue;
    if (found) throw Error("more than one map for domain " + std::string(DomainName(domain)));
    found = &m;
  }
  if (!found) {
    throw Error("no abstraction map covers domain " + std::string(DomainName(domain)));
  }
  return *found;
}

std::vector<Observation> MapObservations(const Infoset& info,
                                         std::span<const AbstractionMap> maps) {
  std::vector<Observation> out = info.observations;
  for (Observation& o : out) {
    const AbstractionMap& m = MapFor(maps, o.domain);
    if (o.index < 0 || o.index >= static_cast<int>(m.assignment.size())) {
      throw Error("observation " + std::string(DomainName(o.domain)) + ":" +
                  std::to_string(o.index) + " of infoset '" + info.key +
                  "' is not covered by its map");
    }
    o.index = m.assignment[o.index];
    o.bucketed = true;
  }
  return out;
}

}  // namespace

GameTree AbstractGame(const GameTree& game, std::span<const AbstractionMap> maps) {
  std::vector<Infoset> infosets;
  std::unordered_map<std::string, std::int32_t> by_key;
  std::vector<std::int32_t> remap(game.infosets().size());
  for (std::size_t i = 0; i < game.infosets().size(); ++i) {
    const Infoset& info = game.infosets()[i];
    Infoset merged;
    merged.player = info.player;
    merged.observations = MapObservations(info, maps);
    merged.public_history = info.public_history;
    merged.actions = info.actions;
    merged.key = MakeInfosetKey(merged.player, merged.observations, merged.public_history);
    auto [it, inserted] = by_key.emplace(merged.key, static_cast<std::int32_t>(infosets.size()));
    if (inserted) infosets.push_back(std::move(merged));
    remap[i] = it->second;
  }
  return game.WithInfosets(game.name() + "/abstract", std::move(infosets), remap);
}

BehavioralProfile LiftStrategy(const BehavioralProfile& abstract_profile,
                               const GameTree& abstract_game,
                               std::span<const AbstractionMap> maps, const GameTree& original) {
  BehavioralProfile lifted;
  lifted.probs.resize(original.infosets().size());
  for (std::size_t i = 0; i < original.infosets().size(); ++i) {
    const Infoset& info = original.infosets()[i];
    const std::string key =
        MakeInfosetKey(info.player, MapObservations(info, maps), info.public_history);
    const std::int32_t image = abstract_game.FindInfoset(key);
    if (image < 0 || static_cast<std::size_t>(image) >= abstract_profile.probs.size() ||
        abstract_profile.probs[image].size() != info.actions.size()) {
      throw Error("abstract profile has no entry for image '" + key + "' of infoset '" +
                  info.key + "'");
    }
    lifted.probs[i] = abstract_profile.probs[image];
  }
  return lifted;
}

using nlohmann::json;

void SaveMaps(std::span<const AbstractionMap> maps, const std::filesystem::path& path) {
  json arr = json::array();
  for (const auto& m : maps) {
    arr.push_back({{"domain", DomainName(m.domain)},
                   {"game_size", m.game_size},
                   {"method", MethodName(m.method)},
                   {"k", m.k},
                   {"seed", m.seed},
                   {"nested", m.nested},
                   {"num_nonempty", m.NonEmptyBuckets()},
                   {"assignment", m.assignment}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << json{{"maps", arr}}.dump() << '\n';
}

std::vector<AbstractionMap> LoadMaps(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<AbstractionMap> maps;
  try {
    json doc = json::parse(in);
    for (const auto& j : doc.at("maps")) {
      AbstractionMap m;
      m.domain = DomainFromName(j.at("domain").get<std::string>());
      m.game_size = j.at("game_size").get<int>();
      m.method = ParseMethod(j.at("method").get<std::string>());
      m.k = j.at("k").get<int>();
      m.seed = j.at("seed").get<std::uint64_t>();
      m.nested = j.value("nested", false);
      m.assignment = j.at("assignment").get<std::vector<int>>();
      if (static_cast<int>(m.assignment.size()) != DomainSize(m.domain, m.game_size)) {
        throw Error("map for " + std::string(DomainName(m.domain)) + " has " +
                    std::to_string(m.assignment.size()) + " entries, expected " +
                    std::to_string(DomainSize(m.domain, m.game_size)));
      }
      maps.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(path.string() + ": malformed map file: " + e.what());
  }
  return maps;
}

}  // namespace gamevec
