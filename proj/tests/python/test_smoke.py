# Copyright 2026 The gamevec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Smoke tests for the gamevec Python module."""

import json
import math

import pytest

import gamevec


def test_kuhn_solve_reaches_known_value():
    game = gamevec.Game("kuhn:3")
    assert game.validate() == []
    profile, report = gamevec.solve(game, target_eps=1e-3)
    assert report["exploitability"] <= 1e-3
    assert game.exploitability(profile) == pytest.approx(report["exploitability"], abs=1e-12)
    assert game.expected_value(profile) == pytest.approx(-1.0 / 18.0, abs=2e-3)


def test_uniform_profile_and_best_response():
    game = gamevec.Game("kuhn:3")
    uniform = game.uniform()
    assert set(uniform) == set(game.infosets)
    v1, br1 = game.best_response(uniform, 0)
    v2, br2 = game.best_response(uniform, 1)
    assert game.exploitability(uniform) == pytest.approx((v1 + v2) / 2.0, abs=1e-12)
    assert all(sum(p) == pytest.approx(1.0) for p in br1.values())


def test_strategy_roundtrip(tmp_path):
    game = gamevec.Game("leduc:3")
    profile, _ = gamevec.solve(game, target_eps=1e-1)
    path = tmp_path / "s.json"
    gamevec.save_strategy(game, profile, path)
    assert gamevec.load_strategy(game, path) == profile


def test_sample_train_and_query():
    game = gamevec.Game("kuhn:8")
    profile, _ = gamevec.solve(game, target_eps=1e-3)
    lines = gamevec.sample(game, profile, 2000, seed=3)
    assert len(lines) == 2000
    assert lines == gamevec.sample(game, profile, 2000, seed=3)
    assert all("," in line[-1] for line in lines)
    bare = gamevec.sample(game, profile, 10, seed=3, payoff_token=False)
    assert all("," not in tok for line in bare for tok in line)

    table, losses = gamevec.train_glove(lines, vector_size=8, max_iter=20, min_count=1, seed=1)
    assert len(losses) == 20 and losses[-1] < losses[0]
    assert all(len(v) == 8 for v in table.values())
    neighbors = gamevec.knn(table, "3?", 3, subset=[t for t in table if t.endswith("?")])
    assert len(neighbors) == 3 and neighbors[0][1] <= neighbors[-1][1]
    tokens, coords, explained = gamevec.pca2(table)
    assert len(tokens) == len(coords) == len(table)
    assert 0.0 <= explained[1] <= explained[0] <= 1.0


def test_kmeans_separates_groups():
    points = [[0.0, 0.0], [0.1, 0.0], [10.0, 10.0], [10.1, 10.0]]
    result = gamevec.kmeans(points, 2, seed=0)
    a = result["assignments"]
    assert a[0] == a[1] and a[2] == a[3] and a[0] != a[2]
    assert result["inertia"] == pytest.approx(0.01)


def test_mock_embeddings_need_no_network(tmp_path):
    texts = gamevec.hand_texts("leduc_preflop")
    table = gamevec.fetch_embeddings(texts, provider="mock", cache_dir=str(tmp_path))
    assert set(table) == set(texts)
    assert table == gamevec.fetch_embeddings(texts, provider="mock", cache_dir=str(tmp_path))
    with pytest.raises(gamevec.GamevecError):
        gamevec.fetch_embeddings(texts, provider="openai")


def test_abstraction_bounds():
    game = gamevec.Game("kuhn:4")
    identity = gamevec.evaluate_abstraction(game, "identity", 8, target_eps=1e-4)
    coarse = gamevec.evaluate_abstraction(game, "hand_bucketing", 1, target_eps=1e-4)
    assert identity["exploitability"] <= 1e-4
    assert coarse["exploitability"] > identity["exploitability"]
    assert coarse["num_sequences"] < identity["num_sequences"]


def test_run_experiment(tmp_path):
    config = {
        "game": "kuhn:4",
        "methods": ["random", "hand_bucketing"],
        "k": [1, 2],
        "seeds": 2,
        "solver": {"target_eps": 1e-3, "warm_start_iterations": 0},
        "output_dir": str(tmp_path),
    }
    records = gamevec.run_experiment(json.dumps(config))
    assert len(records) == 8
    keys = [(r["method"], r["k1"], r["k2"], r["seed"]) for r in records]
    assert keys == sorted(keys)
    assert all(math.isfinite(r["exploitability"]) for r in records)
    assert (tmp_path / "results.csv").exists()
    with pytest.raises(gamevec.GamevecError):
        gamevec.run_experiment(json.dumps({"game": "chess"}), write_outputs=False)
