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


#include "gamevec/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "gamevec/corpus.h"
#include "gamevec/random.h"

namespace gamevec {

using nlohmann::json;

SolveOptions ExperimentSolveOptions() {
  SolveOptions options;
  options.max_iterations = 100000;
  options.target_eps = 1e-6;
  options.variant = SolverVariant::kCfrPlus;
  options.warm_start_iterations = 1000;
  return options;
}

namespace {

template <typename T>
T Field(const json& obj, const char* name, const std::string& where, T fallback) {
  if (!obj.contains(name)) return fallback;
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error("config: field '" + where + name + "' has the wrong type");
  }
}

std::vector<int> IntList(const json& obj, const char* name) {
  if (!obj.contains(name)) return {};
  const json& v = obj.at(name);
  if (v.is_number_integer()) return {v.get<int>()};
  if (!v.is_array()) throw Error(std::string("config: field '") + name + "' must be a list");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) {
      throw Error(std::string("config: field '") + name + "' must hold integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

SolveOptions ParseSolver(const json& obj) {
  SolveOptions o = ExperimentSolveOptions();
  o.max_iterations = Field(obj, "max_iterations", "solver.", o.max_iterations);
  o.target_eps = Field(obj, "target_eps", "solver.", o.target_eps);
  o.check_every = Field(obj, "check_every", "solver.", o.check_every);
  o.warm_start_iterations =
      Field(obj, "warm_start_iterations", "solver.", o.warm_start_iterations);
  o.variant = ParseSolverVariant(
      Field<std::string>(obj, "variant", "solver.", std::string(SolverVariantName(o.variant))));
  return o;
}

GloveParams ParseGlove(const json& obj) {
  GloveParams p;
  p.vector_size = Field(obj, "vector_size", "embedding.glove.", p.vector_size);
  p.max_iter = Field(obj, "max_iter", "embedding.glove.", p.max_iter);
  p.window_size = Field(obj, "window_size", "embedding.glove.", p.window_size);
  p.x_max = Field(obj, "x_max", "embedding.glove.", p.x_max);
  p.alpha = Field(obj, "alpha", "embedding.glove.", p.alpha);
  p.eta = Field(obj, "eta", "embedding.glove.", p.eta);
  p.seed = Field(obj, "seed", "embedding.glove.", p.seed);
  p.min_count = Field(obj, "min_count", "embedding.glove.", p.min_count);
  p.threads = Field(obj, "threads", "embedding.glove.", p.threads);
  return p;
}

EmbeddingSource ParseEmbedding(const json& obj) {
  EmbeddingSource src;
  const auto kind = Field<std::string>(obj, "source", "embedding.", "none");
  if (kind == "none") {
    src.kind = EmbeddingSource::Kind::kNone;
  } else if (kind == "file") {
    src.kind = EmbeddingSource::Kind::kFile;
    src.path = Field<std::string>(obj, "path", "embedding.", "");
    if (src.path.empty()) throw Error("config: embedding.path is required for source 'file'");
  } else if (kind == "train") {
    src.kind = EmbeddingSource::Kind::kTrain;
    src.path = Field<std::string>(obj, "corpus", "embedding.", "");
    if (obj.contains("sample")) {
      const json& s = obj.at("sample");
      src.sample_hands = Field(s, "hands", "embedding.sample.", src.sample_hands);
      src.sample_seed = Field(s, "seed", "embedding.sample.", src.sample_seed);
      src.sample_solve_eps = Field(s, "solve_eps", "embedding.sample.", src.sample_solve_eps);
      src.payoff_token = Field(s, "payoff_token", "embedding.sample.", src.payoff_token);
    }
    if (obj.contains("glove")) src.glove = ParseGlove(obj.at("glove"));
  } else if (kind == "remote") {
    src.kind = EmbeddingSource::Kind::kRemote;
    const auto provider = Field<std::string>(obj, "provider", "embedding.", "mock");
    src.provider = DefaultProviderConfig(provider);
    src.provider.endpoint = Field(obj, "endpoint", "embedding.", src.provider.endpoint);
    src.provider.model = Field(obj, "model", "embedding.", src.provider.model);
    src.provider.api_key_env = Field(obj, "api_key_env", "embedding.", src.provider.api_key_env);
    src.provider.batch_size = Field(obj, "batch_size", "embedding.", src.provider.batch_size);
    src.provider.max_retries = Field(obj, "max_retries", "embedding.", src.provider.max_retries);
    src.provider.timeout_seconds =
        Field(obj, "timeout_seconds", "embedding.", src.provider.timeout_seconds);
    src.provider.max_in_flight =
        Field(obj, "max_in_flight", "embedding.", src.provider.max_in_flight);
    src.cache_dir = Field<std::string>(obj, "cache_dir", "embedding.", "");
    src.allow_network = Field(obj, "allow_network", "embedding.", false);
  } else {
    throw Error("config: unknown embedding.source '" + kind + "'");
  }
  return src;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (methods.empty()) throw Error("config: 'methods' must not be empty");
  if (k1.empty()) throw Error("config: 'k' (or 'k1') must not be empty");
  if (game.kind == GameSpec::Kind::kLeduc && k2.empty()) {
    throw Error("config: 'k2' must not be empty for leduc");
  }
  if (game.kind == GameSpec::Kind::kKuhn && !k2.empty()) {
    throw Error("config: 'k2' applies to leduc only");
  }
  for (int k : k1) if (k < 1) throw Error("config: k values must be >= 1");
  for (int k : k2) if (k < 1) throw Error("config: k2 values must be >= 1");
  if (seeds.empty()) throw Error("config: 'seeds' must not be empty");
  for (int s : seeds) if (s < 0) throw Error("config: seeds must be >= 0");
  if (threads < 1) throw Error("config: threads must be >= 1");
  const bool needs_table =
      std::find(methods.begin(), methods.end(), AbstractionMethod::kKMeans) != methods.end();
  if (needs_table && embedding.kind == EmbeddingSource::Kind::kNone) {
    throw Error("config: method 'kmeans' needs an embedding source");
  }
  if (embedding.kind == EmbeddingSource::Kind::kTrain) {
    embedding.glove.Validate();
    if (embedding.sample_hands < 1) throw Error("config: embedding.sample.hands must be >= 1");
  }
  if (embedding.kind == EmbeddingSource::Kind::kRemote) {
    embedding.provider.Validate();
    if (embedding.provider.provider != "mock" && !embedding.allow_network) {
      throw Error("config: provider '" + embedding.provider.provider +
                  "' makes network calls; set embedding.allow_network to true");
    }
  }
}

ExperimentConfig ParseExperimentConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("config: top level must be an object");
  ExperimentConfig cfg;
  if (!doc.contains("game")) throw Error("config: field 'game' is required");
  cfg.game = GameSpec::Parse(Field<std::string>(doc, "game", "", ""));
  if (doc.contains("embedding")) cfg.embedding = ParseEmbedding(doc.at("embedding"));
  if (!doc.contains("methods") || !doc.at("methods").is_array()) {
    throw Error("config: field 'methods' must be a list");
  }
  for (const json& m : doc.at("methods")) cfg.methods.push_back(ParseMethod(m.get<std::string>()));
  cfg.k1 = IntList(doc, doc.contains("k") ? "k" : "k1");
  cfg.k2 = IntList(doc, "k2");
  if (doc.contains("seeds") && doc.at("seeds").is_number_integer()) {
    const int n = doc.at("seeds").get<int>();
    for (int s = 0; s < n; ++s) cfg.seeds.push_back(s);
  } else {
    cfg.seeds = IntList(doc, "seeds");
  }
  cfg.base_seed = Field<std::uint64_t>(doc, "base_seed", "", 0);
  if (doc.contains("solver")) cfg.solver = ParseSolver(doc.at("solver"));
  cfg.threads = Field(doc, "threads", "", 1);
  cfg.output_dir = Field<std::string>(doc, "output_dir", "", "results");
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseExperimentConfig(buf.str());
}

std::uint64_t CellSeed(std::uint64_t base_seed, AbstractionMethod method, int k1, int k2,
                       int seed) {
  std::uint64_t h = HashCombine(base_seed, HashString(MethodName(method)));
  h = HashCombine(h, static_cast<std::uint64_t>(k1));
  h = HashCombine(h, static_cast<std::uint64_t>(k2));
  return HashCombine(h, static_cast<std::uint64_t>(seed));
}

std::vector<AbstractionMap> BuildCellMaps(const GameSpec& game, AbstractionMethod method, int k1,
                                          int k2, std::uint64_t cell_seed,
                                          const EmbeddingTable* table) {
  const int n = game.size;
  auto cluster = [&](ObservationDomain domain, int k, std::uint64_t seed) {
    const int size = DomainSize(domain, n);
    k = std::min(k, size);
    switch (method) {
      case AbstractionMethod::kKMeans:
        if (!table) throw Error("kmeans abstraction needs an embedding table");
        return EmbedClusterAbstraction(*table, domain, n, k, seed);
      case AbstractionMethod::kRandom:
        return RandomMap(domain, n, k, seed);
      case AbstractionMethod::kIdentity:
        return IdentityMap(domain, n);
      case AbstractionMethod::kHandBucketing:
        break;
    }
    // Kuhn hand bucketing buckets cards shared by both seats.
    if (domain == ObservationDomain::kKuhnDeal) k = std::min(k, n);
    return HandBucketingMap(domain, n, k);
  };
  if (game.kind == GameSpec::Kind::kKuhn) {
    return {cluster(ObservationDomain::kKuhnDeal, k1, cell_seed)};
  }
  AbstractionMap preflop =
      cluster(ObservationDomain::kLeducPreflop, k1, HashCombine(cell_seed, 1));
  AbstractionMap flop =
      method == AbstractionMethod::kHandBucketing
          ? NestedFlopHandBucketingMap(preflop, k2)
          : cluster(ObservationDomain::kLeducFlop, k2, HashCombine(cell_seed, 2));
  return {std::move(preflop), std::move(flop)};
}

ExperimentRecord EvaluateMaps(const GameSpec& spec, const GameTree& game,
                              const std::vector<AbstractionMap>& maps, const std::string& method,
                              int k1, int k2, int seed, const SolveOptions& solver) {
  const GameTree abstract = AbstractGame(game, maps);
  const SolveResult solved = Solve(abstract, solver);
  const BehavioralProfile lifted = LiftStrategy(solved.average, abstract, maps, game);
  ExperimentRecord rec;
  rec.game = spec.ToString();
  rec.method = method;
  rec.k1 = k1;
  rec.k2 = k2;
  rec.seed = seed;
  rec.num_sequences = solved.report.size.num_sequences;
  rec.nnz = solved.report.size.nnz;
  rec.exploitability = Exploitability(game, lifted);
  return rec;
}

std::optional<EmbeddingTable> ResolveEmbeddings(const ExperimentConfig& config,
                                                const GameTree& game) {
  const EmbeddingSource& src = config.embedding;
  switch (src.kind) {
    case EmbeddingSource::Kind::kNone:
      return std::nullopt;
    case EmbeddingSource::Kind::kFile:
      return LoadEmbeddingFile(src.path);
    case EmbeddingSource::Kind::kTrain: {
      Corpus corpus;
      if (!src.path.empty()) {
        corpus = ReadCorpus(src.path);
      } else {
        SolveOptions options;
        options.target_eps = src.sample_solve_eps;
        options.max_iterations = 1000000;
        const SolveResult eq = Solve(game, options);
        SampleOptions sample;
        sample.payoff_token = src.payoff_token;
        corpus = SamplePlaythroughs(game, eq.average, src.sample_hands, src.sample_seed, sample);
      }
      const Vocabulary vocab = BuildVocab(corpus, src.glove.min_count);
      const CoocTable cooc = BuildCooccurrence(corpus, vocab, src.glove.window_size);
      const GloveResult trained = TrainGlove(cooc, src.glove);
      EmbeddingTable table = GloveEmbeddings(trained.model, vocab);
      std::filesystem::create_directories(config.output_dir);
      SaveEmbeddingFile(table, config.output_dir / "embeddings.jsonl");
      return table;
    }
    case EmbeddingSource::Kind::kRemote: {
      std::vector<std::string> texts;
      for (ObservationDomain d : GameDomains(config.game)) {
        for (int i = 0; i < DomainSize(d, config.game.size); ++i) {
          texts.push_back(ObservationToken(d, i, config.game.size));
        }
      }
      std::optional<EmbeddingCache> cache;
      if (!src.cache_dir.empty()) cache.emplace(src.cache_dir);
      EmbeddingCache* cache_ptr = cache ? &*cache : nullptr;
      EmbeddingTable table;
      if (src.provider.provider == "mock") {
        MockEmbeddingTransport transport;
        table = FetchEmbeddings(src.provider, texts, cache_ptr, transport);
      } else {
        HttpTransport transport;
        table = FetchEmbeddings(src.provider, texts, cache_ptr, transport);
      }
      std::filesystem::create_directories(config.output_dir);
      SaveEmbeddingFile(table, config.output_dir / "embeddings.jsonl");
      return table;
    }
  }
  return std::nullopt;
}

std::vector<ExperimentRecord> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const GameTree game = BuildGame(config.game);
  const std::optional<EmbeddingTable> table = ResolveEmbeddings(config, game);

  struct Cell {
    AbstractionMethod method;
    int k1, k2;
  };
  std::vector<Cell> cells;
  const std::vector<int> k2s = config.k2.empty() ? std::vector<int>{0} : config.k2;
  for (AbstractionMethod m : config.methods) {
    for (int k1 : config.k1) {
      for (int k2 : k2s) cells.push_back({m, k1, k2});
    }
  }

  // Deterministic methods are solved once per (k1, k2) and reported for
  // every seed.
  struct Job {
    std::size_t cell;
    int seed;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const bool seeded = cells[c].method == AbstractionMethod::kKMeans ||
                        cells[c].method == AbstractionMethod::kRandom;
    if (seeded) {
      for (int s : config.seeds) jobs.push_back({c, s});
    } else {
      jobs.push_back({c, config.seeds.front()});
    }
  }

  std::vector<ExperimentRecord> done(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::string first_error;
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error.empty()) return;
      }
      const Cell& cell = cells[jobs[j].cell];
      const int seed = jobs[j].seed;
      try {
        const auto maps = BuildCellMaps(config.game, cell.method, cell.k1, cell.k2,
                                        CellSeed(config.base_seed, cell.method, cell.k1,
                                                 cell.k2, seed),
                                        table ? &*table : nullptr);
        done[j] = EvaluateMaps(config.game, game, maps, std::string(MethodName(cell.method)),
                               cell.k1, cell.k2, seed, config.solver);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (first_error.empty()) {
          first_error = "cell method=" + std::string(MethodName(cell.method)) +
                        " k1=" + std::to_string(cell.k1) + " k2=" + std::to_string(cell.k2) +
                        " seed=" + std::to_string(seed) + ": " + e.what();
        }
      }
    }
  };
  const int n_threads =
      std::max(1, std::min<int>(config.threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw Error(first_error);

  std::vector<ExperimentRecord> records;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Cell& cell = cells[jobs[j].cell];
    const bool seeded = cell.method == AbstractionMethod::kKMeans ||
                        cell.method == AbstractionMethod::kRandom;
    if (seeded) {
      records.push_back(done[j]);
      continue;
    }
    for (int s : config.seeds) {
      records.push_back(done[j]);
      records.back().seed = s;
    }
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.method, a.k1, a.k2, a.seed) < std::tie(b.method, b.k1, b.k2, b.seed);
  });
  return records;
}

void WriteExperimentOutputs(const ExperimentConfig& config,
                            const std::vector<ExperimentRecord>& records) {
  std::filesystem::create_directories(config.output_dir);
  EmitResults(records, config.output_dir / "results.csv");
  EmitSummary(records, config.output_dir / "summary.csv");
}

}  // namespace gamevec
