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


#ifndef GAMEVEC_GLOVE_H_
#define GAMEVEC_GLOVE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "gamevec/corpus.h"
#include "gamevec/embedding.h"

namespace gamevec {

struct GloveParams {
  int vector_size = 50;
  int max_iter = 100;
  int window_size = 10;
  double x_max = 10.0;
  double alpha = 0.75;
  double eta = 0.075;
  std::uint64_t seed = 42;
  int min_count = 20;
  // 1 = sequential and deterministic; more threads update lock-free.
  int threads = 1;

  void Validate() const;
};

struct CoocEntry {
  std::int32_t i;
  std::int32_t j;
  double x;
};

// Symmetric co-occurrence weights over vocabulary ids, sorted by (i, j);
// both (i, j) and (j, i) are stored.
struct CoocTable {
  std::int32_t vocab_size = 0;
  std::vector<CoocEntry> entries;

  // 0 when absent.
  double Get(std::int32_t i, std::int32_t j) const;
};

// Within each line, a pair at distance d <= window_size of in-vocabulary
// tokens adds 1/d to both orientations.
CoocTable BuildCooccurrence(const Corpus& corpus, const Vocabulary& vocab, int window_size);

// Weight f(x) = (x / x_max)^alpha below x_max, else 1.
double GloveWeight(double x, double x_max, double alpha);

// Main vectors w, context vectors w~ and both biases.
struct GloveModel {
  int dim = 0;
  std::vector<double> main, context;  // vocab_size * dim, row-major
  std::vector<double> main_bias, context_bias;

  // Entries uniform in (-0.5/dim, 0.5/dim).
  static GloveModel Init(std::int32_t vocab_size, int dim, std::uint64_t seed);
};

// Sum over stored entries of f(X_ij) (w_i . w~_j + b_i + b~_j - log X_ij)^2.
double GloveLoss(const CoocTable& cooc, const GloveModel& model, const GloveParams& params);

struct GloveResult {
  GloveModel model;
  // Loss after each iteration (index 0 is after iteration 1).
  std::vector<double> loss_history;
};

// AdaGrad on the weighted least-squares objective, entries visited in a
// seeded shuffled order each iteration, squared-gradient accumulators
// starting at 1. Throws Error on an empty table or a non-finite loss.
GloveResult TrainGlove(const CoocTable& cooc, const GloveParams& params,
                       const std::function<void(int, double)>& on_iteration = {});

// Rows w + w~ under the vocabulary tokens; provenance "trained".
EmbeddingTable GloveEmbeddings(const GloveModel& model, const Vocabulary& vocab);

}  // namespace gamevec

#endif  // GAMEVEC_GLOVE_H_
