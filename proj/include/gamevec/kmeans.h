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


#ifndef GAMEVEC_KMEANS_H_
#define GAMEVEC_KMEANS_H_

#include <cstdint>
#include <vector>

namespace gamevec {

struct KMeansOptions {
  int max_iter = 100;
  // Stop once no centroid moves farther than this (Euclidean).
  double tol = 1e-6;
};

struct ClusterResult {
  std::vector<int> assignments;
  std::vector<std::vector<double>> centroids;
  // Sum of squared distances to the assigned centroid.
  double inertia = 0.0;
  int iterations = 0;
  // Inertia after each assignment step, for monitoring.
  std::vector<double> inertia_history;

  int NonEmptyClusters() const;
};

// Lloyd's algorithm with k-means++ seeding. Empty clusters are kept (their
// centroid stays where it was). Throws Error when k < 1, k exceeds the
// number of points, or dimensions differ.
ClusterResult KMeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed,
                     const KMeansOptions& options = {});

}  // namespace gamevec

#endif  // GAMEVEC_KMEANS_H_
