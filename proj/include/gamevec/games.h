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


#ifndef GAMEVEC_GAMES_H_
#define GAMEVEC_GAMES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gamevec/game_tree.h"

namespace gamevec {

// N-card Kuhn poker: ante 1, a single bet of 1, at most one bet.
struct KuhnSpec {
  int num_cards = 3;
};

// N-rank Leduc hold'em over hearts and spades: ante 1, bet 2 preflop and 4
// on the flop, at most two bets per round, player 1 acts first in both.
struct LeducSpec {
  int num_ranks = 3;
};

enum class Suit : std::uint8_t { kClubs, kDiamonds, kHearts, kSpades };

struct Card {
  int rank = 0;  // 0 = deuce ... 12 = ace
  Suit suit = Suit::kClubs;
};

// Rank character then suit character, e.g. "As".
std::string CardText(Card card);
Card ParseCard(std::string_view text);

// Leduc deck layout: card index = rank * 2 + (0 for hearts, 1 for spades).
inline int LeducRank(int card) { return card / 2; }
Card LeducCard(int card);
std::string LeducCardText(int card, int num_ranks);

// Index of a (hole, board) pair among the deck_size * (deck_size - 1)
// ordered pairs of distinct cards.
int LeducPairIndex(int hole, int board, int deck_size);
std::pair<int, int> LeducPairCards(int pair_index, int deck_size);

GameTree BuildKuhn(const KuhnSpec& spec);
GameTree BuildLeduc(const LeducSpec& spec);

// A benchmark game named as "kuhn:<cards>" or "leduc:<ranks>".
struct GameSpec {
  enum class Kind { kKuhn, kLeduc };
  Kind kind = Kind::kKuhn;
  int size = 3;

  std::string ToString() const;
  static GameSpec Parse(std::string_view text);
  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

GameTree BuildGame(const GameSpec& spec);

// Clustering domains of a game, in the order abstraction expects maps.
std::vector<ObservationDomain> GameDomains(const GameSpec& spec);

// Number of observations in a domain for a game of the given size.
int DomainSize(ObservationDomain domain, int game_size);

// Textual token naming a domain observation: Kuhn deal events as "57?" /
// "?57", Leduc hole cards as "As", (hole, board) pairs as "AsKh".
std::string ObservationToken(ObservationDomain domain, int index, int game_size);

enum class StrengthKind { kKuhn, kLeducPreflop, kLeducFlop };
StrengthKind ParseStrengthKind(std::string_view name);

// Observations of a domain ordered weakest first. Kuhn orders the cards
// (not deal events); Leduc preflop orders hole cards; Leduc flop orders
// (hole, board) pair indices: unpaired by hole rank then board rank, then
// every paired observation by rank.
std::vector<int> StrengthOrder(StrengthKind kind, int game_size);

}  // namespace gamevec

#endif  // GAMEVEC_GAMES_H_
