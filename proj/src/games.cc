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


#include "gamevec/games.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <tuple>

namespace gamevec {

namespace {

constexpr std::string_view kRankChars = "23456789TJQKA";
constexpr std::string_view kSuitChars = "cdhs";

}  // namespace

std::string CardText(Card card) {
  if (card.rank < 0 || card.rank >= static_cast<int>(kRankChars.size())) {
    throw Error("card rank " + std::to_string(card.rank) + " has no textual form");
  }
  return {kRankChars[card.rank], kSuitChars[static_cast<int>(card.suit)]};
}

Card ParseCard(std::string_view text) {
  if (text.size() != 2) throw Error("bad card text '" + std::string(text) + "'");
  auto r = kRankChars.find(text[0]);
  auto s = kSuitChars.find(text[1]);
  if (r == std::string_view::npos || s == std::string_view::npos) {
    throw Error("bad card text '" + std::string(text) + "'");
  }
  return Card{static_cast<int>(r), static_cast<Suit>(s)};
}

Card LeducCard(int card) {
  return Card{LeducRank(card), card % 2 == 0 ? Suit::kHearts : Suit::kSpades};
}

std::string LeducCardText(int card, int num_ranks) {
  if (num_ranks <= static_cast<int>(kRankChars.size())) return CardText(LeducCard(card));
  return std::to_string(LeducRank(card)) + (card % 2 == 0 ? "h" : "s");
}

int LeducPairIndex(int hole, int board, int deck_size) {
  return hole * (deck_size - 1) + (board < hole ? board : board - 1);
}

std::pair<int, int> LeducPairCards(int pair_index, int deck_size) {
  int hole = pair_index / (deck_size - 1);
  int board = pair_index % (deck_size - 1);
  if (board >= hole) ++board;
  return {hole, board};
}

GameTree BuildKuhn(const KuhnSpec& spec) {
  const int n = spec.num_cards;
  if (n < 2) throw Error("Kuhn poker needs at least 2 cards, got " + std::to_string(n));
  GameBuilder b("kuhn:" + std::to_string(n));
  auto showdown = [](int c1, int c2, double stake) { return c1 > c2 ? stake : -stake; };

  const std::int32_t root = b.AddChance(n);
  for (int c1 = 0; c1 < n; ++c1) {
    const std::int32_t deal2 = b.AddChance(n - 1);
    b.SetEdge(root, c1, deal2, std::to_string(c1) + "?", 1.0 / n);
    int slot = 0;
    for (int c2 = 0; c2 < n; ++c2) {
      if (c2 == c1) continue;
      const std::vector<Observation> obs1{{ObservationDomain::kKuhnDeal, c1}};
      const std::vector<Observation> obs2{{ObservationDomain::kKuhnDeal, n + c2}};

      const std::int32_t p1_root = b.AddDecision(b.InternInfoset(0, obs1, "", {"c", "B"}), 2);
      b.SetEdge(deal2, slot++, p1_root, "?" + std::to_string(c2), 1.0 / (n - 1));

      // check
      const std::int32_t p2_c = b.AddDecision(b.InternInfoset(1, obs2, "c", {"C", "B"}), 2);
      b.SetEdge(p1_root, 0, p2_c, "c");
      b.SetEdge(p2_c, 0, b.AddTerminal(showdown(c1, c2, 1)), "C");
      const std::int32_t p1_cb = b.AddDecision(b.InternInfoset(0, obs1, "cB", {"f", "C"}), 2);
      b.SetEdge(p2_c, 1, p1_cb, "B");
      b.SetEdge(p1_cb, 0, b.AddTerminal(-1), "f");
      b.SetEdge(p1_cb, 1, b.AddTerminal(showdown(c1, c2, 2)), "C");

      // bet
      const std::int32_t p2_b = b.AddDecision(b.InternInfoset(1, obs2, "B", {"f", "C"}), 2);
      b.SetEdge(p1_root, 1, p2_b, "B");
      b.SetEdge(p2_b, 0, b.AddTerminal(1), "f");
      b.SetEdge(p2_b, 1, b.AddTerminal(showdown(c1, c2, 2)), "C");
    }
  }
  return std::move(b).Build();
}

namespace {

class LeducBuilder {
 public:
  explicit LeducBuilder(int num_ranks)
      : num_ranks_(num_ranks), deck_(2 * num_ranks), b_("leduc:" + std::to_string(num_ranks)) {}

  GameTree Build() && {
    const std::int32_t root = b_.AddChance(deck_);
    for (int h1 = 0; h1 < deck_; ++h1) {
      const std::int32_t deal2 = b_.AddChance(deck_ - 1);
      b_.SetEdge(root, h1, deal2, Text(h1) + "?", 1.0 / deck_);
      int slot = 0;
      for (int h2 = 0; h2 < deck_; ++h2) {
        if (h2 == h1) continue;
        State s;
        s.hole = {h1, h2};
        const std::int32_t child = Round(s);
        b_.SetEdge(deal2, slot++, child, "?" + Text(h2), 1.0 / (deck_ - 1));
      }
    }
    return std::move(b_).Build();
  }

 private:
  struct State {
    std::array<int, 2> hole{};
    int board = -1;
    int round = 0;
    std::array<int, 2> commit{1, 1};
    int bets = 0;
    int actor = 0;
    std::string preflop_history;
    std::string round_history;
  };

  std::string Text(int card) const { return LeducCardText(card, num_ranks_); }

  std::string PublicHistory(const State& s) const {
    return s.round == 0 ? s.round_history : s.preflop_history + "/" + s.round_history;
  }

  std::vector<Observation> Observations(const State& s) const {
    const int hole = s.hole[s.actor];
    std::vector<Observation> obs{{ObservationDomain::kLeducPreflop, hole}};
    if (s.round == 1) {
      obs.push_back({ObservationDomain::kLeducFlop, LeducPairIndex(hole, s.board, deck_)});
    }
    return obs;
  }

  double Showdown(const State& s) const {
    const int r1 = LeducRank(s.hole[0]);
    const int r2 = LeducRank(s.hole[1]);
    const int rb = LeducRank(s.board);
    const double stake = s.commit[0];
    if (r1 == rb) return stake;
    if (r2 == rb) return -stake;
    if (r1 == r2) return 0.0;
    return r1 > r2 ? stake : -stake;
  }

  // Either deals the board (after preflop) or resolves the showdown.
  std::int32_t CloseRound(const State& s) {
    if (s.round == 1) return b_.AddTerminal(Showdown(s));
    const std::int32_t chance = b_.AddChance(deck_ - 2);
    int slot = 0;
    for (int board = 0; board < deck_; ++board) {
      if (board == s.hole[0] || board == s.hole[1]) continue;
      State next = s;
      next.board = board;
      next.round = 1;
      next.bets = 0;
      next.actor = 0;
      next.preflop_history = s.round_history;
      next.round_history.clear();
      b_.SetEdge(chance, slot++, Round(next), "b" + Text(board), 1.0 / (deck_ - 2));
    }
    return chance;
  }

  std::int32_t Round(const State& s) {
    const int opp = 1 - s.actor;
    const bool facing_bet = s.commit[s.actor] < s.commit[opp];
    const int bet_size = s.round == 0 ? 2 : 4;
    std::vector<std::string> actions;
    if (facing_bet) {
      actions = {"f", "C"};
      if (s.bets < 2) actions.push_back("R");
    } else {
      actions = {s.round_history.empty() ? "c" : "C", "B"};
    }
    const std::int32_t info =
        b_.InternInfoset(s.actor, Observations(s), PublicHistory(s), actions);
    const std::int32_t node = b_.AddDecision(info, static_cast<int>(actions.size()));
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const std::string& act = actions[a];
      State next = s;
      next.round_history += act;
      next.actor = opp;
      std::int32_t child;
      if (act == "f") {
        child = b_.AddTerminal(s.actor == 0 ? -s.commit[0] : s.commit[1]);
      } else if (act == "c") {
        child = Round(next);
      } else if (act == "C") {
        next.commit[s.actor] = s.commit[opp];
        child = CloseRound(next);
      } else {  // "B" or "R"
        next.commit[s.actor] = s.commit[opp] + bet_size;
        next.bets = s.bets + 1;
        child = Round(next);
      }
      b_.SetEdge(node, static_cast<int>(a), child, act);
    }
    return node;
  }

  int num_ranks_;
  int deck_;
  GameBuilder b_;
};

}  // namespace

GameTree BuildLeduc(const LeducSpec& spec) {
  if (spec.num_ranks < 2) {
    throw Error("Leduc hold'em needs at least 2 ranks, got " + std::to_string(spec.num_ranks));
  }
  return LeducBuilder(spec.num_ranks).Build();
}

std::string GameSpec::ToString() const {
  return (kind == Kind::kKuhn ? "kuhn:" : "leduc:") + std::to_string(size);
}

GameSpec GameSpec::Parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error("game must look like kuhn:<cards> or leduc:<ranks>, got '" + std::string(text) +
                "'");
  }
  GameSpec spec;
  auto kind = text.substr(0, colon);
  if (kind == "kuhn") {
    spec.kind = Kind::kKuhn;
  } else if (kind == "leduc") {
    spec.kind = Kind::kLeduc;
  } else {
    throw Error("unknown game kind '" + std::string(kind) + "'");
  }
  auto num = text.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), spec.size);
  if (ec != std::errc() || ptr != num.data() + num.size()) {
    throw Error("bad game size in '" + std::string(text) + "'");
  }
  return spec;
}

GameTree BuildGame(const GameSpec& spec) {
  return spec.kind == GameSpec::Kind::kKuhn ? BuildKuhn({spec.size}) : BuildLeduc({spec.size});
}

std::vector<ObservationDomain> GameDomains(const GameSpec& spec) {
  if (spec.kind == GameSpec::Kind::kKuhn) return {ObservationDomain::kKuhnDeal};
  return {ObservationDomain::kLeducPreflop, ObservationDomain::kLeducFlop};
}

int DomainSize(ObservationDomain domain, int game_size) {
  switch (domain) {
    case ObservationDomain::kKuhnDeal:
      return 2 * game_size;
    case ObservationDomain::kLeducPreflop:
      return 2 * game_size;
    case ObservationDomain::kLeducFlop:
      return 2 * game_size * (2 * game_size - 1);
  }
  return 0;
}

std::string ObservationToken(ObservationDomain domain, int index, int game_size) {
  switch (domain) {
    case ObservationDomain::kKuhnDeal:
      return index < game_size ? std::to_string(index) + "?"
                               : "?" + std::to_string(index - game_size);
    case ObservationDomain::kLeducPreflop:
      return LeducCardText(index, game_size);
    case ObservationDomain::kLeducFlop: {
      auto [hole, board] = LeducPairCards(index, 2 * game_size);
      return LeducCardText(hole, game_size) + LeducCardText(board, game_size);
    }
  }
  return {};
}

StrengthKind ParseStrengthKind(std::string_view name) {
  if (name == "kuhn") return StrengthKind::kKuhn;
  if (name == "leduc-preflop") return StrengthKind::kLeducPreflop;
  if (name == "leduc-flop") return StrengthKind::kLeducFlop;
  throw Error("unknown strength-order kind '" + std::string(name) + "'");
}

std::vector<int> StrengthOrder(StrengthKind kind, int game_size) {
  std::vector<int> order;
  switch (kind) {
    case StrengthKind::kKuhn:
    case StrengthKind::kLeducPreflop:
      // Kuhn cards are ordinal; Leduc card indices already sort by rank.
      order.resize(kind == StrengthKind::kKuhn ? game_size : 2 * game_size);
      std::iota(order.begin(), order.end(), 0);
      return order;
    case StrengthKind::kLeducFlop: {
      const int deck = 2 * game_size;
      order.resize(deck * (deck - 1));
      std::iota(order.begin(), order.end(), 0);
      auto key = [deck](int idx) {
        auto [hole, board] = LeducPairCards(idx, deck);
        const bool paired = LeducRank(hole) == LeducRank(board);
        return std::tuple(paired, LeducRank(hole), LeducRank(board), hole, board);
      };
      std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
      return order;
    }
  }
  return order;
}

}  // namespace gamevec
