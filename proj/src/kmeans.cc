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


#include "gamevec/kmeans.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gamevec/game_tree.h"
#include "gamevec/random.h"

namespace gamevec {

namespace {

double SquaredDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

std::vector<std::vector<double>> PlusPlusSeeds(const std::vector<std::vector<double>>& points,
                                               int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.Below(n)]);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = SquaredDistance(points[i], centroids[0]);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (double d : dist) total += d;
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = rng.Uniform() * total;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        target -= dist[i];
        if (target < 0.0 && dist[i] > 0.0) {
          pick = i;
          break;
        }
      }
      while (dist[pick] <= 0.0) --pick;
    } else {
      // Every point coincides with a centroid already; the extra
      // centroids duplicate and end up empty.
      pick = rng.Below(n);
    }
    centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], SquaredDistance(points[i], centroids.back()));
    }
  }
  return centroids;
}

}  // namespace

int ClusterResult::NonEmptyClusters() const {
  std::vector<bool> used(centroids.size(), false);
  for (int a : assignments) used[a] = true;
  return static_cast<int>(std::count(used.begin(), used.end(), true));
}

ClusterResult KMeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed,
                     const KMeansOptions& options) {
  if (k < 1) throw Error("kmeans: k must be >= 1");
  if (static_cast<std::size_t>(k) > points.size()) {
    throw Error("kmeans: k = " + std::to_string(k) + " exceeds number of points " +
                std::to_string(points.size()));
  }
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw Error("kmeans: points have different dimensions");
  }

  Rng rng(seed);
  ClusterResult result;
  result.centroids = PlusPlusSeeds(points, k, rng);
  result.assignments.assign(points.size(), 0);

  std::vector<std::vector<double>> sums(k, std::vector<double>(dim));
  std::vector<int> counts(k);
  std::vector<std::int64_t> anchor(k);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      int best = 0;
      double best_d = SquaredDistance(points[i], result.centroids[0]);
      for (int c = 1; c < k; ++c) {
        const double d = SquaredDistance(points[i], result.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      result.assignments[i] = best;
      inertia += best_d;
    }
    result.inertia_history.push_back(inertia);
    result.iterations = iter;

    // Means are taken as anchor + mean offset, with the anchor the first
    // member: exact when all members coincide.
    for (auto& s : sums) std::fill(s.begin(), s.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(anchor.begin(), anchor.end(), -1);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int c = result.assignments[i];
      if (anchor[c] < 0) anchor[c] = static_cast<std::int64_t>(i);
      const auto& a = points[anchor[c]];
      for (std::size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d] - a[d];
      ++counts[c];
    }
    double moved = 0.0;
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      std::vector<double> next(dim);
      const auto& a = points[anchor[c]];
      for (std::size_t d = 0; d < dim; ++d) next[d] = a[d] + sums[c][d] / counts[c];
      moved = std::max(moved, std::sqrt(SquaredDistance(next, result.centroids[c])));
      result.centroids[c] = std::move(next);
    }
    if (moved < options.tol) break;
  }

  result.inertia = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    result.inertia += SquaredDistance(points[i], result.centroids[result.assignments[i]]);
  }
  return result;
}

}  // namespace gamevec
