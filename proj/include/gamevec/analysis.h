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


#ifndef GAMEVEC_ANALYSIS_H_
#define GAMEVEC_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gamevec/embedding.h"

namespace gamevec {

enum class Metric { kEuclidean, kCosine };
Metric ParseMetric(std::string_view name);
std::string_view MetricName(Metric metric);

// Euclidean distance, or 1 - cosine similarity (1 when a vector is zero).
double Distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric);

struct Neighbor {
  std::string token;
  double distance;
};

struct NeighborList {
  std::string query;
  Metric metric = Metric::kEuclidean;
  std::vector<Neighbor> neighbors;  // ascending distance, ties by token
};

// Exact k nearest tokens to `query`, the query itself excluded. `subset`,
// when non-empty, restricts candidates. Throws Error for an unknown query
// or k larger than the candidate count.
NeighborList Knn(const EmbeddingTable& table, std::string_view query, int k, Metric metric,
                 const std::vector<std::string>& subset = {});

struct Projection2D {
  std::vector<std::string> tokens;
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> explained_variance{0.0, 0.0};  // fractions of total
};

// Top two principal components of the mean-centered vectors of `subset`
// (all tokens when empty); each component's first nonzero loading is
// positive. Identical points project to the origin with zero variance.
Projection2D Pca2(const EmbeddingTable& table, const std::vector<std::string>& subset = {});

// CSV token,x,y.
void WriteProjectionCsv(const Projection2D& projection, const std::filesystem::path& path);

struct ExperimentRecord {
  std::string game;
  std::string method;
  int k1 = 0;
  int k2 = 0;  // 0 when the game has one clustering domain
  int seed = 0;
  std::int64_t num_sequences = 0;
  std::int64_t nnz = 0;
  double exploitability = 0.0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct SummaryRow {
  std::string game;
  std::string method;
  int k1 = 0;
  int k2 = 0;
  int count = 0;
  double mean_num_sequences = 0.0;
  double mean_nnz = 0.0;
  double mean_exploitability = 0.0;
  // Sample standard deviation / sqrt(count); absent (NaN) for one sample.
  double sem_exploitability = 0.0;
};

// Grouped by (game, method, k1, k2) in first-appearance order.
std::vector<SummaryRow> Summarize(const std::vector<ExperimentRecord>& records);

// Header game,method,k1,k2,seed,num_sequences,nnz,exploitability; values
// printed so that parsing restores them exactly.
void WriteResults(const std::vector<ExperimentRecord>& records, std::ostream& out);
void EmitResults(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path);
std::vector<ExperimentRecord> ParseResults(const std::filesystem::path& path);

// Header game,method,k1,k2,count,num_sequences,nnz,exploitability_mean,
// exploitability_sem (empty for one sample).
void EmitSummary(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path);

}  // namespace gamevec

#endif  // GAMEVEC_ANALYSIS_H_
