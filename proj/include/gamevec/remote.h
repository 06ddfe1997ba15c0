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


#ifndef GAMEVEC_REMOTE_H_
#define GAMEVEC_REMOTE_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamevec/embedding.h"
#include "gamevec/game_tree.h"

namespace gamevec {

struct ProviderConfig {
  std::string provider;  // "openai", "gemini" or "mock"
  std::string endpoint;  // empty: provider default
  std::string model;
  std::string api_key_env;  // empty: no key sent
  int batch_size = 100;
  int max_retries = 3;  // extra attempts after the first
  double timeout_seconds = 30.0;
  double backoff_seconds = 0.5;  // doubled after each failed attempt
  int max_in_flight = 1;

  void Validate() const;
};

// Defaults for a provider: OpenAI "text-embedding-3-small" with key
// OPENAI_API_KEY, Gemini "gemini-embedding-001" with key GEMINI_API_KEY,
// mock "mock-embedding" without a key.
ProviderConfig DefaultProviderConfig(const std::string& provider);

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  double timeout_seconds = 30.0;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Connection-level failure (no HTTP status).
class TransportError : public Error {
 public:
  using Error::Error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Throws TransportError when no response arrives.
  virtual HttpResponse Post(const HttpRequest& request) = 0;
};

// HTTP(S) over cpp-httplib.
class HttpTransport : public Transport {
 public:
  HttpResponse Post(const HttpRequest& request) override;
};

// Answers OpenAI-schema embedding requests offline with vectors derived
// from a hash of each text. Thread-safe; counts calls.
class MockEmbeddingTransport : public Transport {
 public:
  explicit MockEmbeddingTransport(int dim = 8) : dim_(dim) {}
  HttpResponse Post(const HttpRequest& request) override;
  int calls() const;

  static std::vector<double> VectorFor(const std::string& text, int dim);

 private:
  int dim_;
  mutable std::mutex mu_;
  int calls_ = 0;
};

// Maps texts to a provider request and a response to vectors (in input
// order). Adding a provider means adding an adapter.
class ProviderAdapter {
 public:
  virtual ~ProviderAdapter() = default;
  virtual HttpRequest BuildRequest(const ProviderConfig& cfg, const std::vector<std::string>& texts,
                                   const std::string& api_key) const = 0;
  virtual std::vector<std::vector<double>> ParseResponse(const std::string& body,
                                                         std::size_t expected) const = 0;
};

std::unique_ptr<ProviderAdapter> MakeAdapter(const std::string& provider);

// (provider, model, exact text) -> vector, one JSON-lines file per
// (provider, model) under `dir`, rewritten atomically on insert.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<std::vector<double>> Lookup(const std::string& provider, const std::string& model,
                                            const std::string& text);
  void Insert(const std::string& provider, const std::string& model,
              const std::vector<std::pair<std::string, std::vector<double>>>& items);
  std::filesystem::path FileFor(const std::string& provider, const std::string& model) const;

 private:
  using Shard = std::map<std::string, std::vector<double>>;
  Shard& Load(const std::string& provider, const std::string& model);

  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, Shard> shards_;
};

using Sleeper = std::function<void(std::chrono::duration<double>)>;

// Deduplicates `texts` (first occurrence order), serves cached vectors
// without network, batches the rest, retries transport failures and 429/5xx
// responses with exponential backoff, and stores new vectors in `cache`
// (may be null). Provenance "remote:<model>". Throws Error on a missing API
// key (only when a request is needed), exhausted retries, or a dimension
// mismatch.
EmbeddingTable FetchEmbeddings(const ProviderConfig& cfg, const std::vector<std::string>& texts,
                               EmbeddingCache* cache, Transport& transport,
                               const Sleeper& sleep = {});

enum class HandTextKind { kLeducPreflop, kLeducFlop, kHoldemTwoCard };
HandTextKind ParseHandTextKind(std::string_view name);

// leduc_preflop: 26 cards of ranks 2..A in hearts and spades; leduc_flop:
// 650 ordered (hole, board) texts; holdem_two_card: 52 * 51 ordered texts.
std::vector<std::string> HandTextVocabulary(HandTextKind kind);

}  // namespace gamevec

#endif  // GAMEVEC_REMOTE_H_
