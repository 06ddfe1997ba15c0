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


#ifndef GAMEVEC_EMBEDDING_H_
#define GAMEVEC_EMBEDDING_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gamevec {

// Token -> vector map with a shared dimension. Insertion order is kept so
// files and downstream clusterings are reproducible.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(int dim, std::string provenance)
      : dim_(dim), provenance_(std::move(provenance)) {}

  int dim() const { return dim_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<double>& vector(std::size_t i) const { return vectors_[i]; }

  // Throws Error on dimension mismatch, duplicate token or non-finite entry.
  void Add(std::string token, std::vector<double> vector);

  // nullptr when absent.
  const std::vector<double>* Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return Find(token) != nullptr; }

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.dim_ == b.dim_ && a.provenance_ == b.provenance_ && a.tokens_ == b.tokens_ &&
           a.vectors_ == b.vectors_;
  }

 private:
  int dim_ = 0;
  std::string provenance_;
  std::vector<std::string> tokens_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// JSON lines: a header {"dim": d, "provenance": p}, then one
// {"token": t, "vector": [...]} per entry.
void SaveEmbeddingFile(const EmbeddingTable& table, const std::filesystem::path& path);

// Throws Error naming the line (and token) for malformed input.
EmbeddingTable LoadEmbeddingFile(const std::filesystem::path& path);

}  // namespace gamevec

#endif  // GAMEVEC_EMBEDDING_H_
