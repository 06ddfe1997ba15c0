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


#include <fstream>
#include <regex>

#include "doctest.h"
#include "gamevec/corpus.h"
#include "gamevec/games.h"
#include "gamevec/solver.h"
#include "support.h"

using namespace gamevec;
using namespace gamevec::testing;

TEST_CASE("sampled kuhn lines are well formed") {
  const GameTree g = BuildKuhn({100});
  const Corpus c = SamplePlaythroughs(g, BehavioralProfile::Uniform(g), 2000, 5);
  REQUIRE(c.lines.size() == 2000);
  const std::regex line_re(
      R"(\d+\? \?\d+ (c C|c B f|c B C|B f|B C) -?\d+,-?\d+)");
  for (const auto& line : c.lines) {
    std::string joined;
    for (const auto& t : line) joined += (joined.empty() ? "" : " ") + t;
    CHECK(std::regex_match(joined, line_re));
  }
  // The reference excerpt line matches the same grammar.
  CHECK(std::regex_match(std::string("57? ?12 c B f -1,1"), line_re));
}

TEST_CASE("sampling edge cases") {
  const GameTree g = BuildKuhn({3});
  CHECK(SamplePlaythroughs(g, BehavioralProfile::Uniform(g), 0, 1).lines.empty());
  CHECK_THROWS_AS(SamplePlaythroughs(g, BehavioralProfile::Uniform(g), -1, 1), Error);

  // Chance-free game under pure play: every line identical.
  const GameTree mp = MatchingPennies();
  BehavioralProfile pure = BehavioralProfile::Uniform(mp);
  pure.probs[0] = {0, 1};
  pure.probs[1] = {1, 0};
  const Corpus c = SamplePlaythroughs(mp, pure, 50, 9);
  for (const auto& line : c.lines) CHECK(line == std::vector<std::string>{"T", "h", "-1,1"});

  SampleOptions no_payoff;
  no_payoff.payoff_token = false;
  CHECK(SamplePlaythroughs(mp, pure, 1, 9, no_payoff).lines[0] ==
        std::vector<std::string>{"T", "h"});

  BehavioralProfile missing = BehavioralProfile::Uniform(g);
  missing.probs[3].clear();
  CHECK_THROWS_AS(SamplePlaythroughs(g, missing, 100, 1), Error);
}

TEST_CASE("sampling is reproducible and thread-count independent") {
  const GameTree g = BuildLeduc({3});
  const auto u = BehavioralProfile::Uniform(g);
  SampleOptions one, many;
  one.shard_size = many.shard_size = 100;
  many.threads = 3;
  const Corpus a = SamplePlaythroughs(g, u, 1000, 42, one);
  CHECK(a == SamplePlaythroughs(g, u, 1000, 42, many));
  CHECK(!(a == SamplePlaythroughs(g, u, 1000, 43, one)));
}

TEST_CASE("payoff tokens") {
  CHECK(PayoffToken(-1) == "-1,1");
  CHECK(PayoffToken(2) == "2,-2");
  CHECK(PayoffToken(0) == "0,0");
  CHECK(PayoffToken(-0.0) == "0,0");
  CHECK(PayoffToken(0.5) == "0.5,-0.5");
}

TEST_CASE("corpus files") {
  const auto dir = TempDir("corpus");
  const GameTree g = BuildKuhn({5});
  const Corpus c = SamplePlaythroughs(g, BehavioralProfile::Uniform(g), 300, 3);
  WriteCorpus(c, dir / "c.txt");
  CHECK(ReadCorpus(dir / "c.txt") == c);

  {
    std::ofstream(dir / "chess.txt") << "c4 g6 e4 Bg7 d4 d6 Nc3 Nf6\n\n";
  }
  const Corpus chess = ReadCorpus(dir / "chess.txt");
  REQUIRE(chess.lines.size() == 1);
  CHECK(chess.lines[0] ==
        std::vector<std::string>{"c4", "g6", "e4", "Bg7", "d4", "d6", "Nc3", "Nf6"});

  {
    std::ofstream(dir / "lf.txt", std::ios::binary) << "a b\nc  d\te\n";
    std::ofstream(dir / "crlf.txt", std::ios::binary) << "a b\r\nc  d\te\r\n";
  }
  CHECK(ReadCorpus(dir / "lf.txt") == ReadCorpus(dir / "crlf.txt"));
  CHECK(ReadCorpus(dir / "lf.txt").num_tokens() == 5);
  CHECK_THROWS_AS(ReadCorpus(dir / "absent.txt"), Error);
}

TEST_CASE("vocabulary") {
  Corpus c;
  c.lines = {{"a", "a", "b"}};
  const Vocabulary v2 = BuildVocab(c, 2);
  REQUIRE(v2.size() == 1);
  CHECK(v2.tokens[0] == "a");
  CHECK(v2.counts[0] == 2);
  CHECK(v2.Id("b") == -1);
  const Vocabulary v1 = BuildVocab(c, 1);
  CHECK(v1.tokens == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(BuildVocab(c, 0), Error);
}

TEST_CASE("kuhn(256) equilibrium corpus covers all deal tokens") {
  const GameTree g = BuildKuhn({256});
  SolveOptions o;
  o.target_eps = 1e-3;
  const auto eq = Solve(g, o);
  const Corpus c = SamplePlaythroughs(g, eq.average, 100000, 17);
  const Vocabulary v = BuildVocab(c, 20);
  for (int i = 0; i < 512; ++i) {
    CHECK(v.Id(ObservationToken(ObservationDomain::kKuhnDeal, i, 256)) >= 0);
  }
}
