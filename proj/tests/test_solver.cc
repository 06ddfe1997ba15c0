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


#include <cmath>

#include "doctest.h"
#include "gamevec/games.h"
#include "gamevec/solver.h"
#include "support.h"

using namespace gamevec;
using namespace gamevec::testing;

TEST_CASE("closed-form kuhn equilibrium certifies the game value") {
  const GameTree g = BuildKuhn({3});
  const BehavioralProfile eq = KuhnEquilibrium(g);
  CHECK(TreeWalkUtility(g, eq) == doctest::Approx(-1.0 / 18.0).epsilon(1e-14));
  // Neither player gains by any pure deviation.
  CHECK(EnumeratedBestResponse(g, eq, 0) == doctest::Approx(-1.0 / 18.0).epsilon(1e-14));
  CHECK(EnumeratedBestResponse(g, eq, 1) == doctest::Approx(1.0 / 18.0).epsilon(1e-14));
  CHECK(std::abs(Exploitability(g, eq)) <= 1e-12);
}

TEST_CASE("solver on matching pennies") {
  const GameTree g = MatchingPennies();
  SolveOptions o;
  o.max_iterations = 10000;
  o.target_eps = 1e-3;
  const SolveResult r = Solve(g, o);
  CHECK(r.report.exploitability <= 1e-3);
  for (const auto& p : r.average.probs) CHECK(p[0] == doctest::Approx(0.5).epsilon(2e-3));

  BehavioralProfile exact = BehavioralProfile::Uniform(g);
  CHECK(std::abs(Exploitability(g, exact)) <= 1e-12);
}

TEST_CASE("solver on kuhn(3) reaches the game value") {
  const GameTree g = BuildKuhn({3});
  for (SolverVariant v : {SolverVariant::kCfrPlus, SolverVariant::kCfr}) {
    SolveOptions o;
    o.variant = v;
    o.max_iterations = 10000;
    o.target_eps = 1e-3;
    const SolveResult r = Solve(g, o);
    CHECK(r.report.iterations <= 10000);
    CHECK(r.report.exploitability <= 1e-3);
    CHECK(std::abs(TreeWalkUtility(g, r.average) + 1.0 / 18.0) <= 1e-3);
    // Reported exploitability agrees with the enumeration oracle.
    const double oracle =
        (EnumeratedBestResponse(g, r.average, 0) + EnumeratedBestResponse(g, r.average, 1)) / 2;
    CHECK(r.report.exploitability == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("one iteration returns the uniform first average") {
  for (const GameTree& g : {BuildKuhn({3}), BuildLeduc({2})}) {
    SolveOptions o;
    o.max_iterations = 1;
    const SolveResult r = Solve(g, o);
    CHECK(r.report.iterations == 1);
    const auto u = BehavioralProfile::Uniform(g);
    for (std::size_t i = 0; i < u.probs.size(); ++i) {
      for (std::size_t a = 0; a < u.probs[i].size(); ++a) {
        CHECK(r.average.probs[i][a] == doctest::Approx(u.probs[i][a]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("solver is deterministic and validates options") {
  const GameTree g = BuildKuhn({4});
  SolveOptions o;
  o.max_iterations = 500;
  o.warm_start_iterations = 50;
  const auto a = Solve(g, o);
  const auto b = Solve(g, o);
  CHECK(a.average.probs == b.average.probs);
  CHECK(a.report.warm_start_iterations == 250);
  SolveOptions bad = o;
  bad.max_iterations = 0;
  CHECK_THROWS_AS(Solve(g, bad), Error);
  bad = o;
  bad.warm_start_iterations = -1;
  CHECK_THROWS_AS(Solve(g, bad), Error);
  CHECK(ParseSolverVariant("cfr+") == SolverVariant::kCfrPlus);
  CHECK_THROWS_AS(ParseSolverVariant("mccfr"), Error);
}

TEST_CASE("warm-started solve converges") {
  const GameTree g = BuildKuhn({3});
  SolveOptions o;
  o.warm_start_iterations = 200;
  o.target_eps = 1e-5;
  const auto r = Solve(g, o);
  CHECK(r.report.exploitability <= 1e-5);
  CHECK(std::abs(TreeWalkUtility(g, r.average) + 1.0 / 18.0) <= 1e-4);
}

TEST_CASE("best response") {
  const GameTree mp = MatchingPennies();
  CHECK(ComputeBestResponse(mp, BehavioralProfile::Uniform(mp), 0).value == 0.0);

  const GameTree g = BuildKuhn({3});
  // Always check, fold to any bet.
  BehavioralProfile passive = BehavioralProfile::Uniform(g);
  for (std::size_t i = 0; i < g.infosets().size(); ++i) {
    const auto& info = g.infoset(i);
    const auto& acts = info.actions;
    passive.probs[i].assign(acts.size(), 0.0);
    for (std::size_t a = 0; a < acts.size(); ++a) {
      if (acts[a] == "c" || acts[a] == "C" || acts[a] == "f") {
        if (acts[a] == "C" && info.public_history.back() == 'B') continue;
        passive.probs[i][a] = 1.0;
        break;
      }
    }
  }
  for (Player p : {0, 1}) {
    const double oracle = EnumeratedBestResponse(g, passive, p);
    const BestResponse br = ComputeBestResponse(g, passive, p);
    CHECK(br.value == doctest::Approx(oracle).epsilon(1e-12));
    // The returned pure strategy attains the value.
    BehavioralProfile joint = passive;
    for (std::size_t i = 0; i < g.infosets().size(); ++i) {
      if (g.infoset(i).player == p) joint.probs[i] = br.strategy.probs[i];
    }
    const double u1 = TreeWalkUtility(g, joint);
    CHECK((p == 0 ? u1 : -u1) == doctest::Approx(oracle).epsilon(1e-12));
  }

  // Against the exact equilibrium the best response earns the game value.
  const auto eq = KuhnEquilibrium(g);
  CHECK(ComputeBestResponse(g, eq, 0).value == doctest::Approx(-1.0 / 18.0).epsilon(1e-12));

  BehavioralProfile partial = eq;
  partial.probs[g.FindInfoset("P2|kuhn-deal:3|B")].clear();
  CHECK_THROWS_AS(ComputeBestResponse(g, partial, 0), Error);
}

TEST_CASE("exploitability agrees across oracles") {
  const GameTree k3 = BuildKuhn({3});
  const auto u = BehavioralProfile::Uniform(k3);
  const double oracle =
      (EnumeratedBestResponse(k3, u, 0) + EnumeratedBestResponse(k3, u, 1)) / 2;
  CHECK(std::abs(Exploitability(k3, u) - oracle) <= 1e-9);

  const GameTree l3 = BuildLeduc({3});
  const SequenceFormGame sf(l3);
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto p = RandomProfile(l3, rng);
    const double walk =
        (ComputeBestResponse(l3, p, 0).value + ComputeBestResponse(l3, p, 1).value) / 2;
    CHECK(sf.Exploitability(p) == doctest::Approx(walk).epsilon(1e-10));
    CHECK(sf.Exploitability(p) >= -1e-12);
  }
}
