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


#include "gamevec/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "gamevec/random.h"

namespace gamevec {

std::size_t Corpus::num_tokens() const {
  std::size_t n = 0;
  for (const auto& line : lines) n += line.size();
  return n;
}

std::string PayoffToken(double u1) {
  auto text = [](double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", v);
    }
    return std::string(buf);
  };
  return text(u1) + "," + text(-u1);
}

namespace {

std::vector<std::string> SampleLine(const GameTree& game, const BehavioralProfile& profile,
                                    bool payoff_token, Rng& rng) {
  std::vector<std::string> line;
  std::int32_t id = 0;
  while (true) {
    const Node& n = game.node(id);
    if (n.actor == Actor::kTerminal) {
      if (payoff_token) line.push_back(PayoffToken(n.utility));
      return line;
    }
    const std::vector<double>* sigma = nullptr;
    if (n.actor != Actor::kChance) {
      if (static_cast<std::size_t>(n.infoset) >= profile.probs.size() ||
          profile.probs[n.infoset].size() != static_cast<std::size_t>(n.num_edges)) {
        throw Error("profile missing infoset '" + game.infoset(n.infoset).key + "'");
      }
      sigma = &profile.probs[n.infoset];
    }
    const double u = rng.Uniform();
    double cum = 0.0;
    int pick = -1;
    for (int a = 0; a < n.num_edges; ++a) {
      const double p = sigma ? (*sigma)[a] : game.edge(n, a).prob;
      if (p <= 0.0) continue;
      pick = a;  // rounding leaves the last positive edge as fallback
      cum += p;
      if (u < cum) break;
    }
    if (pick < 0) throw Error("node without positive-probability edge");
    const Edge& e = game.edge(n, pick);
    line.push_back(game.label(e));
    id = e.child;
  }
}

}  // namespace

Corpus SamplePlaythroughs(const GameTree& game, const BehavioralProfile& profile,
                          std::int64_t n, std::uint64_t seed, const SampleOptions& options) {
  if (n < 0) throw Error("sample: n must be >= 0");
  if (options.shard_size < 1) throw Error("sample: shard_size must be >= 1");
  Corpus corpus;
  corpus.lines.resize(n);
  const std::int64_t shards = (n + options.shard_size - 1) / options.shard_size;
  auto run_shard = [&](std::int64_t shard) {
    Rng rng(HashCombine(seed, static_cast<std::uint64_t>(shard)));
    const std::int64_t lo = shard * options.shard_size;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + options.shard_size);
    for (std::int64_t i = lo; i < hi; ++i) {
      corpus.lines[i] = SampleLine(game, profile, options.payoff_token, rng);
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(shards)));
  if (threads <= 1) {
    for (std::int64_t s = 0; s < shards; ++s) run_shard(s);
    return corpus;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t s = w; s < shards; s += threads) run_shard(s);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return corpus;
}

Corpus ReadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::vector<std::string> out;
    std::string tok;
    while (tokens >> tok) out.push_back(std::move(tok));
    if (!out.empty()) corpus.lines.push_back(std::move(out));
  }
  if (in.bad()) throw Error("read failed for " + path.string());
  return corpus;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& line : corpus.lines) {
    if (line.empty()) throw Error("corpus lines must be non-empty");
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << ' ';
      out << line[i];
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

int Vocabulary::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

Vocabulary BuildVocab(const Corpus& corpus, int min_count) {
  if (min_count < 1) throw Error("min_count must be >= 1");
  std::unordered_map<std::string, std::int64_t> counts;
  for (const auto& line : corpus.lines) {
    for (const auto& tok : line) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [tok, c] : counts) {
    if (c >= min_count) kept.emplace_back(tok, c);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary vocab;
  vocab.min_count = min_count;
  for (auto& [tok, c] : kept) {
    vocab.ids_.emplace(tok, static_cast<int>(vocab.tokens.size()));
    vocab.tokens.push_back(tok);
    vocab.counts.push_back(c);
  }
  return vocab;
}

}  // namespace gamevec
