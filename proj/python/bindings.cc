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


// Python bindings: games, solving, sampling, embeddings, abstraction and
// experiments. Profiles cross the boundary as {infoset key: [probs]} and
// embedding tables as {token: [floats]}.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <memory>
#include <optional>

#include "gamevec/abstraction.h"
#include "gamevec/analysis.h"
#include "gamevec/corpus.h"
#include "gamevec/experiment.h"
#include "gamevec/games.h"
#include "gamevec/glove.h"
#include "gamevec/kmeans.h"
#include "gamevec/remote.h"
#include "gamevec/solver.h"
#include "gamevec/strategy_io.h"

namespace py = pybind11;
using namespace gamevec;

namespace {

using ProfileDict = std::map<std::string, std::vector<double>>;
using TableDict = std::map<std::string, std::vector<double>>;

struct Game {
  GameSpec spec;
  GameTree tree;
};

ProfileDict ToDict(const GameTree& g, const BehavioralProfile& p) {
  ProfileDict out;
  for (std::size_t i = 0; i < g.infosets().size(); ++i) out[g.infoset(i).key] = p.probs.at(i);
  return out;
}

BehavioralProfile FromDict(const GameTree& g, const ProfileDict& d) {
  BehavioralProfile p;
  p.probs.resize(g.infosets().size());
  for (const auto& [key, probs] : d) {
    const auto id = g.FindInfoset(key);
    if (id < 0) throw Error("unknown infoset '" + key + "'");
    p.probs[id] = probs;
  }
  for (std::size_t i = 0; i < g.infosets().size(); ++i) {
    if (p.probs[i].size() != g.infoset(i).actions.size()) {
      throw Error("profile missing infoset '" + g.infoset(i).key + "'");
    }
  }
  return p;
}

EmbeddingTable ToTable(const TableDict& d) {
  if (d.empty()) return EmbeddingTable(0, "python");
  EmbeddingTable t(static_cast<int>(d.begin()->second.size()), "python");
  for (const auto& [tok, v] : d) t.Add(tok, v);
  return t;
}

TableDict FromTable(const EmbeddingTable& t) {
  TableDict d;
  for (std::size_t i = 0; i < t.size(); ++i) d[t.tokens()[i]] = t.vector(i);
  return d;
}

SolveOptions Options(double target_eps, int max_iterations, const std::string& variant,
                     int warm_start) {
  SolveOptions o;
  o.target_eps = target_eps;
  o.max_iterations = max_iterations;
  o.variant = ParseSolverVariant(variant);
  o.warm_start_iterations = warm_start;
  return o;
}

py::dict RecordDict(const ExperimentRecord& r) {
  py::dict d;
  d["game"] = r.game;
  d["method"] = r.method;
  d["k1"] = r.k1;
  d["k2"] = r.k2;
  d["seed"] = r.seed;
  d["num_sequences"] = r.num_sequences;
  d["nnz"] = r.nnz;
  d["exploitability"] = r.exploitability;
  return d;
}

std::vector<std::vector<std::string>> Lines(const Corpus& c) { return c.lines; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "gamevec core: action embeddings and game abstraction";
  py::register_exception<Error>(m, "GamevecError", PyExc_ValueError);

  py::class_<Game, std::shared_ptr<Game>>(m, "Game")
      .def(py::init([](const std::string& spec) {
             auto g = std::make_shared<Game>();
             g->spec = GameSpec::Parse(spec);
             g->tree = BuildGame(g->spec);
             return g;
           }),
           py::arg("spec"))
      .def_property_readonly("spec", [](const Game& g) { return g.spec.ToString(); })
      .def_property_readonly("infosets",
                             [](const Game& g) {
                               std::vector<std::string> keys;
                               for (const auto& i : g.tree.infosets()) keys.push_back(i.key);
                               return keys;
                             })
      .def_property_readonly("num_terminals", [](const Game& g) { return g.tree.num_terminals(); })
      .def("size_metrics",
           [](const Game& g) {
             const SizeMetrics s = ComputeSizeMetrics(g.tree);
             return py::dict(py::arg("num_sequences") = s.num_sequences, py::arg("nnz") = s.nnz);
           })
      .def("validate", [](const Game& g) { return ValidateGame(g.tree); })
      .def("uniform", [](const Game& g) { return ToDict(g.tree, BehavioralProfile::Uniform(g.tree)); })
      .def("expected_value",
           [](const Game& g, const ProfileDict& p) {
             return TreeWalkUtility(g.tree, FromDict(g.tree, p));
           })
      .def("exploitability",
           [](const Game& g, const ProfileDict& p) {
             return Exploitability(g.tree, FromDict(g.tree, p));
           })
      .def("best_response",
           [](const Game& g, const ProfileDict& p, int player) {
             const BestResponse br = ComputeBestResponse(g.tree, FromDict(g.tree, p), player);
             ProfileDict strat;
             for (std::size_t i = 0; i < g.tree.infosets().size(); ++i) {
               if (!br.strategy.probs[i].empty()) strat[g.tree.infoset(i).key] = br.strategy.probs[i];
             }
             return py::make_tuple(br.value, strat);
           },
           py::arg("profile"), py::arg("player"));

  m.def(
      "solve",
      [](const Game& g, double target_eps, int max_iterations, const std::string& variant,
         int warm_start) {
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = Solve(g.tree, Options(target_eps, max_iterations, variant, warm_start));
        }
        py::dict report;
        report["iterations"] = r.report.iterations;
        report["warm_start_iterations"] = r.report.warm_start_iterations;
        report["exploitability"] = r.report.exploitability;
        report["num_sequences"] = r.report.size.num_sequences;
        report["nnz"] = r.report.size.nnz;
        report["seconds"] = r.report.seconds;
        return py::make_tuple(ToDict(g.tree, r.average), report);
      },
      py::arg("game"), py::arg("target_eps") = 1e-6, py::arg("max_iterations") = 100000,
      py::arg("variant") = "cfr_plus", py::arg("warm_start") = 0,
      "Returns (average profile, report).");

  m.def("save_strategy", [](const Game& g, const ProfileDict& p, const std::filesystem::path& path) {
    SaveStrategy(g.tree, FromDict(g.tree, p), path);
  });
  m.def("load_strategy", [](const Game& g, const std::filesystem::path& path) {
    return ToDict(g.tree, LoadStrategy(g.tree, path));
  });

  m.def(
      "sample",
      [](const Game& g, const ProfileDict& p, std::int64_t n, std::uint64_t seed,
         bool payoff_token) {
        SampleOptions o;
        o.payoff_token = payoff_token;
        return Lines(SamplePlaythroughs(g.tree, FromDict(g.tree, p), n, seed, o));
      },
      py::arg("game"), py::arg("profile"), py::arg("n"), py::arg("seed") = 1,
      py::arg("payoff_token") = true, "Playthrough token lines.");

  m.def(
      "train_glove",
      [](const std::vector<std::vector<std::string>>& lines, int vector_size, int max_iter,
         int window_size, double x_max, double alpha, double eta, std::uint64_t seed,
         int min_count) {
        GloveParams p;
        p.vector_size = vector_size;
        p.max_iter = max_iter;
        p.window_size = window_size;
        p.x_max = x_max;
        p.alpha = alpha;
        p.eta = eta;
        p.seed = seed;
        p.min_count = min_count;
        p.Validate();
        Corpus c;
        c.lines = lines;
        const Vocabulary v = BuildVocab(c, min_count);
        const CoocTable t = BuildCooccurrence(c, v, window_size);
        GloveResult r;
        {
          py::gil_scoped_release release;
          r = TrainGlove(t, p);
        }
        return py::make_tuple(FromTable(GloveEmbeddings(r.model, v)), r.loss_history);
      },
      py::arg("lines"), py::arg("vector_size") = 50, py::arg("max_iter") = 100,
      py::arg("window_size") = 10, py::arg("x_max") = 10.0, py::arg("alpha") = 0.75,
      py::arg("eta") = 0.075, py::arg("seed") = 42, py::arg("min_count") = 20,
      "Returns ({token: vector}, loss history).");

  m.def(
      "fetch_embeddings",
      [](const std::vector<std::string>& texts, const std::string& provider,
         const std::string& model, const std::string& cache_dir, bool allow_network) {
        ProviderConfig cfg = DefaultProviderConfig(provider);
        if (!model.empty()) cfg.model = model;
        std::optional<EmbeddingCache> cache;
        if (!cache_dir.empty()) cache.emplace(cache_dir);
        std::unique_ptr<Transport> transport;
        if (provider == "mock") {
          transport = std::make_unique<MockEmbeddingTransport>();
        } else if (!allow_network) {
          throw Error("provider '" + provider + "' makes network calls; pass allow_network=True");
        } else {
          transport = std::make_unique<HttpTransport>();
        }
        py::gil_scoped_release release;
        return FromTable(FetchEmbeddings(cfg, texts, cache ? &*cache : nullptr, *transport));
      },
      py::arg("texts"), py::arg("provider") = "mock", py::arg("model") = "",
      py::arg("cache_dir") = "", py::arg("allow_network") = false);

  m.def("hand_texts", [](const std::string& kind) {
    return HandTextVocabulary(ParseHandTextKind(kind));
  });

  m.def("save_embeddings", [](const TableDict& d, const std::filesystem::path& path) {
    SaveEmbeddingFile(ToTable(d), path);
  });
  m.def("load_embeddings",
        [](const std::filesystem::path& path) { return FromTable(LoadEmbeddingFile(path)); });

  m.def(
      "knn",
      [](const TableDict& d, const std::string& query, int k, const std::string& metric,
         const std::vector<std::string>& subset) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& n : Knn(ToTable(d), query, k, ParseMetric(metric), subset).neighbors) {
          out.emplace_back(n.token, n.distance);
        }
        return out;
      },
      py::arg("table"), py::arg("query"), py::arg("k"), py::arg("metric") = "euclidean",
      py::arg("subset") = std::vector<std::string>{});

  m.def(
      "pca2",
      [](const TableDict& d, const std::vector<std::string>& subset) {
        const Projection2D p = Pca2(ToTable(d), subset);
        return py::make_tuple(p.tokens, p.coords, p.explained_variance);
      },
      py::arg("table"), py::arg("subset") = std::vector<std::string>{},
      "Returns (tokens, [[x, y]], explained variance fractions).");

  m.def(
      "kmeans",
      [](const std::vector<std::vector<double>>& points, int k, std::uint64_t seed) {
        const ClusterResult r = KMeans(points, k, seed);
        py::dict d;
        d["assignments"] = r.assignments;
        d["centroids"] = r.centroids;
        d["inertia"] = r.inertia;
        d["inertia_history"] = r.inertia_history;
        return d;
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0);

  m.def(
      "evaluate_abstraction",
      [](const Game& g, const std::string& method, int k1, int k2, int seed,
         std::optional<TableDict> table, double target_eps, int max_iterations,
         int warm_start) {
        const AbstractionMethod am = ParseMethod(method);
        std::optional<EmbeddingTable> t;
        if (table) t = ToTable(*table);
        if (g.spec.kind == GameSpec::Kind::kKuhn) k2 = 0;
        SolveOptions o = ExperimentSolveOptions();
        o.target_eps = target_eps;
        o.max_iterations = max_iterations;
        o.warm_start_iterations = warm_start;
        ExperimentRecord rec;
        {
          py::gil_scoped_release release;
          const auto maps =
              BuildCellMaps(g.spec, am, k1, k2, CellSeed(0, am, k1, k2, seed), t ? &*t : nullptr);
          rec = EvaluateMaps(g.spec, g.tree, maps, std::string(MethodName(am)), k1, k2, seed, o);
        }
        return RecordDict(rec);
      },
      py::arg("game"), py::arg("method"), py::arg("k1"), py::arg("k2") = 0, py::arg("seed") = 0,
      py::arg("table") = py::none(), py::arg("target_eps") = 1e-6,
      py::arg("max_iterations") = 100000, py::arg("warm_start") = 1000,
      "Lifted-exploitability record of one abstraction cell.");

  m.def(
      "run_experiment",
      [](const std::string& config_json, bool write_outputs) {
        const ExperimentConfig cfg = ParseExperimentConfig(config_json);
        std::vector<ExperimentRecord> records;
        {
          py::gil_scoped_release release;
          records = RunExperiment(cfg);
          if (write_outputs) WriteExperimentOutputs(cfg, records);
        }
        py::list out;
        for (const auto& r : records) out.append(RecordDict(r));
        return out;
      },
      py::arg("config_json"), py::arg("write_outputs") = true,
      "Runs a JSON experiment config; returns records sorted by (method, k1, k2, seed).");
}
