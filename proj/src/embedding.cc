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


#include "gamevec/embedding.h"

#include <cmath>
#include <fstream>

#include "gamevec/game_tree.h"
#include "json.hpp"

namespace gamevec {

using nlohmann::json;

void EmbeddingTable::Add(std::string token, std::vector<double> vector) {
  if (static_cast<int>(vector.size()) != dim_) {
    throw Error("embedding for token '" + token + "' has length " +
                std::to_string(vector.size()) + ", expected " + std::to_string(dim_));
  }
  for (double x : vector) {
    if (!std::isfinite(x)) throw Error("embedding for token '" + token + "' is not finite");
  }
  auto [it, inserted] = index_.emplace(token, tokens_.size());
  if (!inserted) throw Error("duplicate embedding token '" + token + "'");
  tokens_.push_back(std::move(token));
  vectors_.push_back(std::move(vector));
}

const std::vector<double>* EmbeddingTable::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

void SaveEmbeddingFile(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << json{{"dim", table.dim()}, {"provenance", table.provenance()}}.dump() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << json{{"token", table.tokens()[i]}, {"vector", table.vector(i)}}.dump() << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

EmbeddingTable LoadEmbeddingFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  EmbeddingTable table;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail(std::string("malformed JSON: ") + e.what());
    }
    if (!have_header) {
      if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer()) {
        fail("expected header {\"dim\": d, \"provenance\": p}");
      }
      table = EmbeddingTable(j["dim"].get<int>(), j.value("provenance", std::string()));
      have_header = true;
      continue;
    }
    if (!j.is_object() || !j.contains("token") || !j["token"].is_string() ||
        !j.contains("vector") || !j["vector"].is_array()) {
      fail("expected {\"token\": t, \"vector\": [...]}");
    }
    std::vector<double> vec;
    try {
      vec = j["vector"].get<std::vector<double>>();
    } catch (const json::exception&) {
      fail("vector of token '" + j["token"].get<std::string>() + "' is not numeric");
    }
    try {
      table.Add(j["token"].get<std::string>(), std::move(vec));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (!have_header) fail("missing header line");
  return table;
}

}  // namespace gamevec
