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


// Toy games and brute-force oracles shared by the tests. Oracles here walk
// the tree directly and never touch the sequence-form code.

#ifndef GAMEVEC_TESTS_SUPPORT_H_
#define GAMEVEC_TESTS_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gamevec/game_tree.h"
#include "gamevec/random.h"
#include "gamevec/sequence_form.h"

namespace gamevec::testing {

// Simultaneous 2x2 game: P1 picks H/T, P2 picks h/t without seeing it;
// u1 = payoff[a][b].
inline GameTree TwoByTwo(const double payoff[2][2], const std::string& name = "2x2") {
  GameBuilder b(name);
  const auto i1 = b.InternInfoset(0, {}, "", {"H", "T"});
  const auto i2 = b.InternInfoset(1, {}, "", {"h", "t"});
  const auto root = b.AddDecision(i1, 2);
  for (int a = 0; a < 2; ++a) {
    const auto n2 = b.AddDecision(i2, 2);
    b.SetEdge(root, a, n2, a == 0 ? "H" : "T");
    for (int c = 0; c < 2; ++c) b.SetEdge(n2, c, b.AddTerminal(payoff[a][c]), c == 0 ? "h" : "t");
  }
  return std::move(b).Build();
}

inline GameTree MatchingPennies() {
  const double m[2][2] = {{1, -1}, {-1, 1}};
  return TwoByTwo(m, "matching-pennies");
}

// Infoset ids owned by `player`.
inline std::vector<std::int32_t> InfosetsOf(const GameTree& game, Player player) {
  std::vector<std::int32_t> out;
  for (std::size_t i = 0; i < game.infosets().size(); ++i) {
    if (game.infosets()[i].player == player) out.push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

// Calls fn(profile) for every pure strategy of `player`, other entries of
// `base` left untouched.
template <typename Fn>
void ForEachPureStrategy(const GameTree& game, Player player, BehavioralProfile base, Fn fn) {
  const auto infos = InfosetsOf(game, player);
  std::vector<int> choice(infos.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < infos.size(); ++i) {
      auto& p = base.probs[infos[i]];
      std::fill(p.begin(), p.end(), 0.0);
      p[choice[i]] = 1.0;
    }
    fn(static_cast<const BehavioralProfile&>(base));
    std::size_t pos = 0;
    while (pos < infos.size()) {
      if (++choice[pos] < static_cast<int>(game.infoset(infos[pos]).actions.size())) break;
      choice[pos++] = 0;
    }
    if (pos == infos.size()) return;
  }
}

// Best-response value of `player` (own utility) by enumerating pure
// strategies and tree-walking each.
inline double EnumeratedBestResponse(const GameTree& game, const BehavioralProfile& opponent,
                                     Player player) {
  double best = -std::numeric_limits<double>::infinity();
  ForEachPureStrategy(game, player, opponent, [&](const BehavioralProfile& p) {
    const double u1 = TreeWalkUtility(game, p);
    best = std::max(best, player == 0 ? u1 : -u1);
  });
  return best;
}

inline BehavioralProfile RandomProfile(const GameTree& game, Rng& rng) {
  BehavioralProfile profile;
  for (const Infoset& info : game.infosets()) {
    std::vector<double> p(info.actions.size());
    double total = 0.0;
    for (double& v : p) total += (v = rng.Uniform() + 1e-3);
    for (double& v : p) v /= total;
    profile.probs.push_back(std::move(p));
  }
  return profile;
}

inline void SetStrategy(const GameTree& game, BehavioralProfile& profile, const std::string& key,
                        std::vector<double> probs) {
  const auto id = game.FindInfoset(key);
  if (id < 0) throw Error("no infoset " + key);
  profile.probs[id] = std::move(probs);
}

// The closed-form Kuhn(3) equilibrium with alpha = 0: P1 never bets J or K
// first, calls with Q at 1/3; P2 bluffs J at 1/3 and calls Q at 1/3.
// Cards 0 = J, 1 = Q, 2 = K; action orders as in the generated tree.
inline BehavioralProfile KuhnEquilibrium(const GameTree& kuhn3) {
  BehavioralProfile p = BehavioralProfile::Uniform(kuhn3);
  const double third = 1.0 / 3.0;
  // P1 first action: {c, B}; after cB: {f, C}.
  SetStrategy(kuhn3, p, "P1|kuhn-deal:0|", {1, 0});
  SetStrategy(kuhn3, p, "P1|kuhn-deal:1|", {1, 0});
  SetStrategy(kuhn3, p, "P1|kuhn-deal:2|", {1, 0});
  SetStrategy(kuhn3, p, "P1|kuhn-deal:0|cB", {1, 0});
  SetStrategy(kuhn3, p, "P1|kuhn-deal:1|cB", {1 - third, third});
  SetStrategy(kuhn3, p, "P1|kuhn-deal:2|cB", {0, 1});
  // P2 deal index = 3 + card. After c: {C, B}; after B: {f, C}.
  SetStrategy(kuhn3, p, "P2|kuhn-deal:3|c", {1 - third, third});
  SetStrategy(kuhn3, p, "P2|kuhn-deal:4|c", {1, 0});
  SetStrategy(kuhn3, p, "P2|kuhn-deal:5|c", {0, 1});
  SetStrategy(kuhn3, p, "P2|kuhn-deal:3|B", {1, 0});
  SetStrategy(kuhn3, p, "P2|kuhn-deal:4|B", {1 - third, third});
  SetStrategy(kuhn3, p, "P2|kuhn-deal:5|B", {0, 1});
  return p;
}

// Two disjoint token groups {a0..a4} and {b0..b4}; each line mixes tokens
// of one group only.
inline std::vector<std::vector<std::string>> TwoGroupLines(int lines, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::string>> out;
  for (int l = 0; l < lines; ++l) {
    const char group = (l % 2) ? 'b' : 'a';
    std::vector<std::string> line;
    for (int t = 0; t < 8; ++t) line.push_back(std::string(1, group) + std::to_string(rng.Below(5)));
    out.push_back(std::move(line));
  }
  return out;
}

inline double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("gamevec_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace gamevec::testing

#endif  // GAMEVEC_TESTS_SUPPORT_H_
