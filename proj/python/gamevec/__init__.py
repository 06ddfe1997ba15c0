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


"""Action embeddings and information abstraction for poker-like games."""

from gamevec._core import (
    Game,
    GamevecError,
    evaluate_abstraction,
    fetch_embeddings,
    hand_texts,
    kmeans,
    knn,
    load_embeddings,
    load_strategy,
    pca2,
    run_experiment,
    sample,
    save_embeddings,
    save_strategy,
    solve,
    train_glove,
)

__all__ = [
    "Game",
    "GamevecError",
    "evaluate_abstraction",
    "fetch_embeddings",
    "hand_texts",
    "kmeans",
    "knn",
    "load_embeddings",
    "load_strategy",
    "pca2",
    "run_experiment",
    "sample",
    "save_embeddings",
    "save_strategy",
    "solve",
    "train_glove",
]
