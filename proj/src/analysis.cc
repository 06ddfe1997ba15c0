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


#include "gamevec/analysis.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "gamevec/game_tree.h"

namespace gamevec {

Metric ParseMetric(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "cosine") return Metric::kCosine;
  throw Error("unknown metric '" + std::string(name) + "'");
}

std::string_view MetricName(Metric metric) {
  return metric == Metric::kEuclidean ? "euclidean" : "cosine";
}

double Distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric) {
  if (a.size() != b.size()) throw Error("distance: vectors have different dimensions");
  if (metric == Metric::kEuclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;
  return 1.0 - dot / std::sqrt(na * nb);
}

NeighborList Knn(const EmbeddingTable& table, std::string_view query, int k, Metric metric,
                 const std::vector<std::string>& subset) {
  const auto* q = table.Find(query);
  if (!q) throw Error("knn: unknown token '" + std::string(query) + "'");
  NeighborList out;
  out.query = std::string(query);
  out.metric = metric;
  auto consider = [&](const std::string& tok) {
    if (tok == query) return;
    const auto* v = table.Find(tok);
    if (!v) throw Error("knn: unknown token '" + tok + "'");
    out.neighbors.push_back({tok, Distance(*q, *v, metric)});
  };
  if (subset.empty()) {
    for (const auto& tok : table.tokens()) consider(tok);
  } else {
    for (const auto& tok : subset) consider(tok);
  }
  if (k < 0 || static_cast<std::size_t>(k) > out.neighbors.size()) {
    throw Error("knn: k = " + std::to_string(k) + " exceeds " +
                std::to_string(out.neighbors.size()) + " candidates");
  }
  std::sort(out.neighbors.begin(), out.neighbors.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.token < b.token;
  });
  out.neighbors.resize(k);
  return out;
}

Projection2D Pca2(const EmbeddingTable& table, const std::vector<std::string>& subset) {
  Projection2D out;
  out.tokens = subset.empty() ? table.tokens() : subset;
  const auto n = static_cast<Eigen::Index>(out.tokens.size());
  if (n < 3) throw Error("pca: need at least 3 tokens");
  const int d = table.dim();
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto* v = table.Find(out.tokens[i]);
    if (!v) throw Error("pca: unknown token '" + out.tokens[i] + "'");
    for (int j = 0; j < d; ++j) x(i, j) = (*v)[j];
  }
  x.rowwise() -= x.colwise().mean();
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  // Eigenvalues ascend; take the last two.
  const double total = std::max(0.0, eig.eigenvalues().sum());
  out.coords.assign(n, {0.0, 0.0});
  for (int c = 0; c < 2 && c < d; ++c) {
    const Eigen::Index col = d - 1 - c;
    const double lambda = std::max(0.0, eig.eigenvalues()(col));
    if (total <= 0.0 || lambda <= total * 1e-15) continue;
    Eigen::VectorXd axis = eig.eigenvectors().col(col);
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(axis(j)) > 1e-12) {
        if (axis(j) < 0.0) axis = -axis;
        break;
      }
    }
    out.explained_variance[c] = lambda / total;
    const Eigen::VectorXd proj = x * axis;
    for (Eigen::Index i = 0; i < n; ++i) out.coords[i][c] = proj(i);
  }
  return out;
}

namespace {

std::string Exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

void WriteProjectionCsv(const Projection2D& projection, const std::filesystem::path& path) {
  auto out = OpenOut(path);
  out << "token,x,y\n";
  for (std::size_t i = 0; i < projection.tokens.size(); ++i) {
    out << projection.tokens[i] << ',' << Exact(projection.coords[i][0]) << ','
        << Exact(projection.coords[i][1]) << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<SummaryRow> Summarize(const std::vector<ExperimentRecord>& records) {
  std::vector<SummaryRow> rows;
  std::map<std::tuple<std::string, std::string, int, int>, std::size_t> where;
  std::vector<std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records) {
    auto [it, inserted] = where.emplace(std::tuple(r.game, r.method, r.k1, r.k2), rows.size());
    if (inserted) {
      rows.push_back({r.game, r.method, r.k1, r.k2});
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    SummaryRow& row = rows[g];
    const auto& members = groups[g];
    row.count = static_cast<int>(members.size());
    for (const auto* r : members) {
      row.mean_num_sequences += static_cast<double>(r->num_sequences) / row.count;
      row.mean_nnz += static_cast<double>(r->nnz) / row.count;
      row.mean_exploitability += r->exploitability / row.count;
    }
    if (row.count < 2) {
      row.sem_exploitability = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double ss = 0.0;
    for (const auto* r : members) {
      ss += (r->exploitability - row.mean_exploitability) * (r->exploitability - row.mean_exploitability);
    }
    row.sem_exploitability = std::sqrt(ss / (row.count - 1)) / std::sqrt(row.count);
  }
  return rows;
}

void WriteResults(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << "game,method,k1,k2,seed,num_sequences,nnz,exploitability\n";
  for (const auto& r : records) {
    out << r.game << ',' << r.method << ',' << r.k1 << ',' << r.k2 << ',' << r.seed << ','
        << r.num_sequences << ',' << r.nnz << ',' << Exact(r.exploitability) << '\n';
  }
}

void EmitResults(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path) {
  auto out = OpenOut(path);
  WriteResults(records, out);
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<ExperimentRecord> ParseResults(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  int line_no = 0;
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "game,method,k1,k2,seed,num_sequences,nnz,exploitability") {
        throw Error(path.string() + ": unexpected header");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected 8 fields");
    }
    try {
      records.push_back({f[0], f[1], std::stoi(f[2]), std::stoi(f[3]), std::stoi(f[4]),
                         std::stoll(f[5]), std::stoll(f[6]), std::stod(f[7])});
    } catch (const std::exception&) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  return records;
}

void EmitSummary(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path) {
  auto out = OpenOut(path);
  out << "game,method,k1,k2,count,num_sequences,nnz,exploitability_mean,exploitability_sem\n";
  for (const auto& row : Summarize(records)) {
    out << row.game << ',' << row.method << ',' << row.k1 << ',' << row.k2 << ',' << row.count
        << ',' << Exact(row.mean_num_sequences) << ',' << Exact(row.mean_nnz) << ','
        << Exact(row.mean_exploitability) << ',';
    if (row.count > 1) out << Exact(row.sem_exploitability);
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace gamevec
