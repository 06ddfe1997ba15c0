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


// gamevec: command-line pipeline. Each subcommand reads and writes files;
// exit status is 0 on success, 1 with a diagnostic on stderr otherwise.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gamevec/abstraction.h"
#include "gamevec/analysis.h"
#include "gamevec/corpus.h"
#include "gamevec/experiment.h"
#include "gamevec/games.h"
#include "gamevec/glove.h"
#include "gamevec/remote.h"
#include "gamevec/solver.h"
#include "gamevec/strategy_io.h"

namespace {

using namespace gamevec;
namespace fs = std::filesystem;

struct SolverFlags {
  SolveOptions options = ExperimentSolveOptions();
  std::string variant = "cfr_plus";

  void Register(CLI::App* app) {
    app->add_option("--variant", variant, "cfr or cfr_plus")->capture_default_str();
    app->add_option("--target-eps", options.target_eps, "Stop at this exploitability")
        ->capture_default_str();
    app->add_option("--max-iterations", options.max_iterations)->capture_default_str();
    app->add_option("--check-every", options.check_every)->capture_default_str();
    app->add_option("--warm-start", options.warm_start_iterations,
                    "Iterations per temperature of the warm start (0 disables)")
        ->capture_default_str();
  }
  SolveOptions Get() const {
    SolveOptions o = options;
    o.variant = ParseSolverVariant(variant);
    return o;
  }
};

std::vector<std::string> FilterTokens(const EmbeddingTable& table, const std::string& pattern) {
  if (pattern.empty()) return {};
  const std::regex re(pattern);
  std::vector<std::string> out;
  for (const auto& t : table.tokens()) {
    if (std::regex_match(t, re)) out.push_back(t);
  }
  if (out.empty()) throw Error("no token matches --subset '" + pattern + "'");
  return out;
}

void WriteRecord(const ExperimentRecord& record, const std::string& out) {
  if (out.empty()) {
    WriteResults({record}, std::cout);
  } else {
    EmitResults({record}, out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gamevec: action embeddings and game abstraction"};
  app.require_subcommand(1);

  // solve
  std::string game_text = "kuhn:3";
  std::string strategy_path, out_path;
  SolverFlags solver;
  auto* solve = app.add_subcommand("solve", "Solve a game; write the average strategy");
  solve->add_option("--game", game_text, "kuhn:<cards> or leduc:<ranks>")->required();
  solve->add_option("--out", out_path, "Strategy file (.json or .json.gz)");
  solver.Register(solve);

  // sample
  std::int64_t hands = 1000;
  std::uint64_t seed = 1;
  bool no_payoff = false;
  int threads = 1;
  auto* sample = app.add_subcommand("sample", "Sample playthroughs into a corpus file");
  sample->add_option("--game", game_text)->required();
  sample->add_option("--strategy", strategy_path, "Strategy file from 'solve'")->required();
  sample->add_option("--hands", hands)->capture_default_str();
  sample->add_option("--seed", seed)->capture_default_str();
  sample->add_flag("--no-payoff-token", no_payoff, "Omit the trailing payoff token");
  sample->add_option("--threads", threads)->capture_default_str();
  sample->add_option("--out", out_path)->required();

  // train-embed
  std::string corpus_path;
  GloveParams glove;
  auto* train = app.add_subcommand("train-embed", "Train GloVe embeddings on a corpus");
  train->add_option("--corpus", corpus_path)->required();
  train->add_option("--out", out_path)->required();
  train->add_option("--dim", glove.vector_size)->capture_default_str();
  train->add_option("--iterations", glove.max_iter)->capture_default_str();
  train->add_option("--window", glove.window_size)->capture_default_str();
  train->add_option("--x-max", glove.x_max)->capture_default_str();
  train->add_option("--alpha", glove.alpha)->capture_default_str();
  train->add_option("--eta", glove.eta)->capture_default_str();
  train->add_option("--seed", glove.seed)->capture_default_str();
  train->add_option("--min-count", glove.min_count)->capture_default_str();
  train->add_option("--threads", glove.threads)->capture_default_str();

  // fetch-embed
  std::string provider = "mock", domain, model, endpoint, cache_dir;
  int batch_size = 0, max_retries = -1, max_in_flight = 0;
  bool allow_network = false;
  auto* fetch = app.add_subcommand("fetch-embed", "Embed hand texts with a provider model");
  fetch->add_option("--provider", provider, "openai, gemini or mock")->capture_default_str();
  fetch->add_option("--domain", domain, "leduc_preflop, leduc_flop or holdem_two_card");
  fetch->add_option("--game", game_text, "Embed every observation token of this game");
  fetch->add_option("--model", model);
  fetch->add_option("--endpoint", endpoint);
  fetch->add_option("--cache-dir", cache_dir);
  fetch->add_option("--batch-size", batch_size);
  fetch->add_option("--max-retries", max_retries);
  fetch->add_option("--max-in-flight", max_in_flight);
  fetch->add_flag("--allow-network", allow_network,
                  "Required for real providers; reads the API key from the environment");
  fetch->add_option("--out", out_path)->required();

  // knn
  std::string embeddings_path, query, metric = "euclidean", subset;
  int k = 7;
  auto* knn = app.add_subcommand("knn", "Nearest neighbors of a token (CSV)");
  knn->add_option("--embeddings", embeddings_path)->required();
  knn->add_option("--query", query)->required();
  knn->add_option("-k,--k", k)->capture_default_str();
  knn->add_option("--metric", metric, "euclidean or cosine")->capture_default_str();
  knn->add_option("--subset", subset, "Regex restricting candidate tokens");
  knn->add_option("--out", out_path, "CSV path (default stdout)");

  // pca
  auto* pca = app.add_subcommand("pca", "2D PCA projection (CSV token,x,y)");
  pca->add_option("--embeddings", embeddings_path)->required();
  pca->add_option("--subset", subset, "Regex selecting tokens");
  pca->add_option("--out", out_path)->required();

  // abstract
  std::string method = "hand_bucketing";
  int k1 = 1, k2 = 1, seed_index = 0;
  std::uint64_t base_seed = 0;
  auto* abstract = app.add_subcommand("abstract", "Build abstraction maps");
  abstract->add_option("--game", game_text)->required();
  abstract->add_option("--method", method, "kmeans, random, hand_bucketing or identity")
      ->capture_default_str();
  abstract->add_option("--k,--k1", k1, "Buckets (Kuhn) or preflop buckets (Leduc)")
      ->capture_default_str();
  abstract->add_option("--k2", k2, "Flop buckets (Leduc)")->capture_default_str();
  abstract->add_option("--seed", seed_index)->capture_default_str();
  abstract->add_option("--base-seed", base_seed)->capture_default_str();
  abstract->add_option("--embeddings", embeddings_path, "Needed for kmeans");
  abstract->add_option("--out", out_path)->required();

  // evaluate
  std::string maps_path;
  auto* evaluate =
      app.add_subcommand("evaluate", "Solve an abstraction; lifted exploitability record (CSV)");
  evaluate->add_option("--game", game_text)->required();
  evaluate->add_option("--maps", maps_path)->required();
  evaluate->add_option("--seed", seed_index, "Seed column of the record")->capture_default_str();
  evaluate->add_option("--out", out_path, "CSV path (default stdout)");
  solver.Register(evaluate);

  // experiment
  std::string config_path, output_dir;
  int exp_threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Run a config grid; write CSVs");
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--threads", exp_threads, "Override the config worker count");
  experiment->add_option("--output-dir", output_dir, "Override the config output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const GameSpec spec = GameSpec::Parse(game_text);
      const GameTree game = BuildGame(spec);
      const SolveResult r = Solve(game, solver.Get());
      if (!out_path.empty()) SaveStrategy(game, r.average, out_path);
      std::printf("game %s\nexploitability %.17g\niterations %d\nwarm_start_iterations %d\n"
                  "num_sequences %lld\nnnz %lld\nseconds %.3f\n",
                  spec.ToString().c_str(), r.report.exploitability, r.report.iterations,
                  r.report.warm_start_iterations,
                  static_cast<long long>(r.report.size.num_sequences),
                  static_cast<long long>(r.report.size.nnz), r.report.seconds);
    } else if (*sample) {
      const GameTree game = BuildGame(GameSpec::Parse(game_text));
      const BehavioralProfile profile = LoadStrategy(game, strategy_path);
      SampleOptions options;
      options.payoff_token = !no_payoff;
      options.threads = threads;
      const Corpus corpus = SamplePlaythroughs(game, profile, hands, seed, options);
      WriteCorpus(corpus, out_path);
      std::printf("lines %zu\ntokens %zu\n", corpus.lines.size(), corpus.num_tokens());
    } else if (*train) {
      glove.Validate();
      const Corpus corpus = ReadCorpus(corpus_path);
      const Vocabulary vocab = BuildVocab(corpus, glove.min_count);
      const CoocTable cooc = BuildCooccurrence(corpus, vocab, glove.window_size);
      const GloveResult r = TrainGlove(cooc, glove);
      SaveEmbeddingFile(GloveEmbeddings(r.model, vocab), out_path);
      std::printf("vocab %zu\ncooccurrences %zu\nloss %.17g\n", vocab.size(),
                  cooc.entries.size(), r.loss_history.back());
    } else if (*fetch) {
      ProviderConfig cfg = DefaultProviderConfig(provider);
      if (!model.empty()) cfg.model = model;
      if (!endpoint.empty()) cfg.endpoint = endpoint;
      if (batch_size > 0) cfg.batch_size = batch_size;
      if (max_retries >= 0) cfg.max_retries = max_retries;
      if (max_in_flight > 0) cfg.max_in_flight = max_in_flight;
      cfg.Validate();
      std::vector<std::string> texts;
      if (!domain.empty()) {
        texts = HandTextVocabulary(ParseHandTextKind(domain));
      } else {
        const GameSpec spec = GameSpec::Parse(game_text);
        for (ObservationDomain d : GameDomains(spec)) {
          for (int i = 0; i < DomainSize(d, spec.size); ++i) {
            texts.push_back(ObservationToken(d, i, spec.size));
          }
        }
      }
      std::optional<EmbeddingCache> cache;
      if (!cache_dir.empty()) cache.emplace(cache_dir);
      std::unique_ptr<Transport> transport;
      if (provider == "mock") {
        transport = std::make_unique<MockEmbeddingTransport>();
      } else if (!allow_network) {
        throw Error("provider '" + provider + "' makes network calls; pass --allow-network");
      } else {
        transport = std::make_unique<HttpTransport>();
      }
      const EmbeddingTable table =
          FetchEmbeddings(cfg, texts, cache ? &*cache : nullptr, *transport);
      SaveEmbeddingFile(table, out_path);
      std::printf("tokens %zu\ndim %d\n", table.size(), table.dim());
    } else if (*knn) {
      const EmbeddingTable table = LoadEmbeddingFile(embeddings_path);
      const NeighborList list =
          Knn(table, query, k, ParseMetric(metric), FilterTokens(table, subset));
      std::string csv = "rank,token,distance\n";
      char buf[64];
      for (std::size_t i = 0; i < list.neighbors.size(); ++i) {
        std::snprintf(buf, sizeof buf, ",%.17g\n", list.neighbors[i].distance);
        csv += std::to_string(i + 1) + "," + list.neighbors[i].token + buf;
      }
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(out_path) << csv;
      }
    } else if (*pca) {
      const EmbeddingTable table = LoadEmbeddingFile(embeddings_path);
      const Projection2D p = Pca2(table, FilterTokens(table, subset));
      WriteProjectionCsv(p, out_path);
      std::printf("explained_variance %.6f %.6f\n", p.explained_variance[0],
                  p.explained_variance[1]);
    } else if (*abstract) {
      const GameSpec spec = GameSpec::Parse(game_text);
      const AbstractionMethod m = ParseMethod(method);
      if (spec.kind == GameSpec::Kind::kKuhn) k2 = 0;
      std::optional<EmbeddingTable> table;
      if (!embeddings_path.empty()) table = LoadEmbeddingFile(embeddings_path);
      const auto maps = BuildCellMaps(spec, m, k1, k2, CellSeed(base_seed, m, k1, k2, seed_index),
                                      table ? &*table : nullptr);
      SaveMaps(maps, out_path);
      for (const auto& map : maps) {
        std::printf("%s buckets %d\n", std::string(DomainName(map.domain)).c_str(),
                    map.NonEmptyBuckets());
      }
    } else if (*evaluate) {
      const GameSpec spec = GameSpec::Parse(game_text);
      const GameTree game = BuildGame(spec);
      const auto maps = LoadMaps(maps_path);
      if (maps.empty()) throw Error("map file holds no maps");
      const int rk1 = maps[0].k;
      const int rk2 = maps.size() > 1 ? maps[1].k : 0;
      WriteRecord(EvaluateMaps(spec, game, maps, std::string(MethodName(maps[0].method)), rk1,
                               rk2, seed_index, solver.Get()),
                  out_path);
    } else if (*experiment) {
      ExperimentConfig cfg = LoadExperimentConfig(config_path);
      if (exp_threads > 0) cfg.threads = exp_threads;
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      const auto records = RunExperiment(cfg);
      WriteExperimentOutputs(cfg, records);
      std::printf("records %zu\nresults %s\nsummary %s\n", records.size(),
                  (cfg.output_dir / "results.csv").string().c_str(),
                  (cfg.output_dir / "summary.csv").string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gamevec %s: error: %s\n", app.get_subcommands().front()->get_name().c_str(),
                 e.what());
    return 1;
  }
  return 0;
}
