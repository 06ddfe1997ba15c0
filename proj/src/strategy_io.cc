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


#include "gamevec/strategy_io.h"

#include <zlib.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gamevec {

using nlohmann::json;

std::string ReadMaybeGzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");  // passes plain files through
  if (!f) throw Error("cannot read " + path.string());
  std::string data;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) data.append(buf, n);
  const bool failed = n < 0;
  gzclose(f);
  if (failed) throw Error("corrupt compressed file " + path.string());
  return data;
}

void WriteMaybeGzip(const std::filesystem::path& path, const std::string& data) {
  if (path.extension() == ".gz") {
    gzFile f = gzopen(path.string().c_str(), "wb");
    if (!f) throw Error("cannot write " + path.string());
    const int written = data.empty() ? 0 : gzwrite(f, data.data(), static_cast<unsigned>(data.size()));
    if (gzclose(f) != Z_OK || written != static_cast<int>(data.size())) {
      throw Error("write failed for " + path.string());
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << data;
  if (!out) throw Error("write failed for " + path.string());
}

void SaveStrategy(const GameTree& game, const BehavioralProfile& profile,
                  const std::filesystem::path& path) {
  json strategy = json::object();
  for (std::size_t i = 0; i < game.infosets().size(); ++i) {
    const Infoset& info = game.infosets()[i];
    if (i >= profile.probs.size() || profile.probs[i].size() != info.actions.size()) {
      throw Error("profile missing infoset '" + info.key + "'");
    }
    strategy[info.key] = profile.probs[i];
  }
  WriteMaybeGzip(path, json{{"game", game.name()}, {"strategy", strategy}}.dump() + "\n");
}

BehavioralProfile LoadStrategy(const GameTree& game, const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(ReadMaybeGzip(path));
  } catch (const json::exception& e) {
    throw Error(path.string() + ": malformed strategy file: " + e.what());
  }
  if (!doc.contains("strategy") || !doc["strategy"].is_object()) {
    throw Error(path.string() + ": missing \"strategy\" object");
  }
  BehavioralProfile profile;
  profile.probs.resize(game.infosets().size());
  std::vector<bool> seen(game.infosets().size(), false);
  for (const auto& [key, value] : doc["strategy"].items()) {
    const std::int32_t id = game.FindInfoset(key);
    if (id < 0) throw Error(path.string() + ": unknown infoset '" + key + "'");
    std::vector<double> sigma;
    try {
      sigma = value.get<std::vector<double>>();
    } catch (const json::exception&) {
      throw Error(path.string() + ": infoset '" + key + "' has a non-numeric distribution");
    }
    if (sigma.size() != game.infoset(id).actions.size()) {
      throw Error(path.string() + ": infoset '" + key + "' has " + std::to_string(sigma.size()) +
                  " probabilities, expected " + std::to_string(game.infoset(id).actions.size()));
    }
    double total = 0.0;
    for (double p : sigma) {
      if (!(p >= 0.0)) throw Error(path.string() + ": negative probability at '" + key + "'");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw Error(path.string() + ": distribution at '" + key + "' sums to " + std::to_string(total));
    }
    profile.probs[id] = std::move(sigma);
    seen[id] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw Error(path.string() + ": missing infoset '" + game.infosets()[i].key + "'");
  }
  return profile;
}

}  // namespace gamevec
