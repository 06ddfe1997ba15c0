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


#include "gamevec/glove.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <unordered_map>

#include "gamevec/random.h"

namespace gamevec {

void GloveParams::Validate() const {
  if (vector_size < 1) throw Error("glove: vector_size must be >= 1");
  if (max_iter < 1) throw Error("glove: max_iter must be >= 1");
  if (window_size < 1) throw Error("glove: window_size must be >= 1");
  if (!(x_max > 0.0)) throw Error("glove: x_max must be > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("glove: alpha must be in (0, 1]");
  if (!(eta > 0.0)) throw Error("glove: eta must be > 0");
  if (min_count < 1) throw Error("glove: min_count must be >= 1");
  if (threads < 1) throw Error("glove: threads must be >= 1");
}

double CoocTable::Get(std::int32_t i, std::int32_t j) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair(i, j),
                             [](const CoocEntry& e, const std::pair<std::int32_t, std::int32_t>& k) {
                               return e.i != k.first ? e.i < k.first : e.j < k.second;
                             });
  return it != entries.end() && it->i == i && it->j == j ? it->x : 0.0;
}

CoocTable BuildCooccurrence(const Corpus& corpus, const Vocabulary& vocab, int window_size) {
  if (window_size < 1) throw Error("window_size must be >= 1");
  const auto v = static_cast<std::int64_t>(vocab.size());
  std::unordered_map<std::int64_t, double> cells;
  std::vector<std::int32_t> ids;
  for (const auto& line : corpus.lines) {
    ids.clear();
    for (const auto& tok : line) ids.push_back(vocab.Id(tok));
    for (std::size_t t = 0; t < ids.size(); ++t) {
      if (ids[t] < 0) continue;
      for (int d = 1; d <= window_size && t + d < ids.size(); ++d) {
        const std::int32_t other = ids[t + d];
        if (other < 0) continue;
        const double w = 1.0 / d;
        cells[ids[t] * v + other] += w;
        cells[other * v + ids[t]] += w;
      }
    }
  }
  CoocTable table;
  table.vocab_size = static_cast<std::int32_t>(v);
  table.entries.reserve(cells.size());
  for (const auto& [key, x] : cells) {
    table.entries.push_back({static_cast<std::int32_t>(key / v), static_cast<std::int32_t>(key % v), x});
  }
  std::sort(table.entries.begin(), table.entries.end(), [](const auto& a, const auto& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return table;
}

double GloveWeight(double x, double x_max, double alpha) {
  return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

GloveModel GloveModel::Init(std::int32_t vocab_size, int dim, std::uint64_t seed) {
  GloveModel m;
  m.dim = dim;
  Rng rng(seed);
  const double half = 0.5 / dim;
  auto fill = [&](std::vector<double>& v, std::size_t n) {
    v.resize(n);
    for (double& x : v) x = rng.Uniform(-half, half);
  };
  fill(m.main, static_cast<std::size_t>(vocab_size) * dim);
  fill(m.context, static_cast<std::size_t>(vocab_size) * dim);
  fill(m.main_bias, vocab_size);
  fill(m.context_bias, vocab_size);
  return m;
}

namespace {

double Residual(const CoocEntry& e, const GloveModel& m) {
  const double* w = &m.main[static_cast<std::size_t>(e.i) * m.dim];
  const double* c = &m.context[static_cast<std::size_t>(e.j) * m.dim];
  double dot = 0.0;
  for (int k = 0; k < m.dim; ++k) dot += w[k] * c[k];
  return dot + m.main_bias[e.i] + m.context_bias[e.j] - std::log(e.x);
}

struct Accumulators {
  std::vector<double> main, context, main_bias, context_bias;
};

// One AdaGrad step on entry e (the reference trainer's update rule).
void Step(const CoocEntry& e, const GloveParams& p, GloveModel& m, Accumulators& g) {
  const int d = m.dim;
  double* w = &m.main[static_cast<std::size_t>(e.i) * d];
  double* c = &m.context[static_cast<std::size_t>(e.j) * d];
  double* gw = &g.main[static_cast<std::size_t>(e.i) * d];
  double* gc = &g.context[static_cast<std::size_t>(e.j) * d];
  const double diff = Residual(e, m);
  const double fdiff = GloveWeight(e.x, p.x_max, p.alpha) * diff * p.eta;
  for (int k = 0; k < d; ++k) {
    const double grad_w = fdiff * c[k];
    const double grad_c = fdiff * w[k];
    const double step_w = grad_w / std::sqrt(gw[k]);
    const double step_c = grad_c / std::sqrt(gc[k]);
    gw[k] += grad_w * grad_w;
    gc[k] += grad_c * grad_c;
    w[k] -= step_w;
    c[k] -= step_c;
  }
  m.main_bias[e.i] -= fdiff / std::sqrt(g.main_bias[e.i]);
  m.context_bias[e.j] -= fdiff / std::sqrt(g.context_bias[e.j]);
  g.main_bias[e.i] += fdiff * fdiff;
  g.context_bias[e.j] += fdiff * fdiff;
}

}  // namespace

double GloveLoss(const CoocTable& cooc, const GloveModel& model, const GloveParams& params) {
  double loss = 0.0;
  for (const CoocEntry& e : cooc.entries) {
    const double diff = Residual(e, model);
    loss += GloveWeight(e.x, params.x_max, params.alpha) * diff * diff;
  }
  return loss;
}

GloveResult TrainGlove(const CoocTable& cooc, const GloveParams& params,
                       const std::function<void(int, double)>& on_iteration) {
  params.Validate();
  if (cooc.entries.empty()) throw Error("glove: empty co-occurrence table");
  GloveResult result;
  result.model = GloveModel::Init(cooc.vocab_size, params.vector_size, params.seed);
  Accumulators g;
  g.main.assign(result.model.main.size(), 1.0);
  g.context.assign(result.model.context.size(), 1.0);
  g.main_bias.assign(cooc.vocab_size, 1.0);
  g.context_bias.assign(cooc.vocab_size, 1.0);

  std::vector<std::size_t> order(cooc.entries.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  Rng rng(HashCombine(params.seed, 0x5348554646ULL));
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.Below(k)]);
    if (params.threads <= 1) {
      for (std::size_t k : order) Step(cooc.entries[k], params, result.model, g);
    } else {
      // Lock-free: workers share the model and race on common rows.
      std::vector<std::thread> pool;
      const std::size_t chunk = (order.size() + params.threads - 1) / params.threads;
      for (int w = 0; w < params.threads; ++w) {
        pool.emplace_back([&, w] {
          const std::size_t lo = w * chunk;
          const std::size_t hi = std::min(order.size(), lo + chunk);
          for (std::size_t k = lo; k < hi; ++k) Step(cooc.entries[order[k]], params, result.model, g);
        });
      }
      for (auto& t : pool) t.join();
    }
    const double loss = GloveLoss(cooc, result.model, params);
    if (!std::isfinite(loss)) {
      throw Error("glove: loss diverged at iteration " + std::to_string(iter));
    }
    result.loss_history.push_back(loss);
    if (on_iteration) on_iteration(iter, loss);
  }
  return result;
}

EmbeddingTable GloveEmbeddings(const GloveModel& model, const Vocabulary& vocab) {
  if (model.main.size() != vocab.size() * static_cast<std::size_t>(model.dim)) {
    throw Error("glove: model and vocabulary sizes differ");
  }
  EmbeddingTable table(model.dim, "trained");
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    std::vector<double> v(model.dim);
    for (int k = 0; k < model.dim; ++k) {
      v[k] = model.main[i * model.dim + k] + model.context[i * model.dim + k];
    }
    table.Add(vocab.tokens[i], std::move(v));
  }
  return table;
}

}  // namespace gamevec
