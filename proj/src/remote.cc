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


#ifdef GAMEVEC_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "gamevec/remote.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "gamevec/games.h"
#include "gamevec/random.h"
#include "httplib.h"
#include "json.hpp"

namespace gamevec {

using nlohmann::json;

void ProviderConfig::Validate() const {
  if (model.empty()) throw Error("provider config: model must be non-empty");
  if (batch_size < 1) throw Error("provider config: batch_size must be >= 1");
  if (max_retries < 0) throw Error("provider config: max_retries must be >= 0");
  if (max_in_flight < 1) throw Error("provider config: max_in_flight must be >= 1");
  if (!(timeout_seconds > 0.0)) throw Error("provider config: timeout must be > 0");
}

ProviderConfig DefaultProviderConfig(const std::string& provider) {
  ProviderConfig cfg;
  cfg.provider = provider;
  if (provider == "openai") {
    cfg.endpoint = "https://api.openai.com/v1/embeddings";
    cfg.model = "text-embedding-3-small";
    cfg.api_key_env = "OPENAI_API_KEY";
  } else if (provider == "gemini") {
    cfg.endpoint = "https://generativelanguage.googleapis.com/v1beta";
    cfg.model = "gemini-embedding-001";
    cfg.api_key_env = "GEMINI_API_KEY";
    cfg.batch_size = 100;
  } else if (provider == "mock") {
    cfg.endpoint = "mock://embeddings";
    cfg.model = "mock-embedding";
  } else {
    throw Error("unknown embedding provider '" + provider + "'");
  }
  return cfg;
}

HttpResponse HttpTransport::Post(const HttpRequest& request) {
  const auto scheme_end = request.url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("malformed URL " + request.url);
  const auto path_start = request.url.find('/', scheme_end + 3);
  const std::string origin = request.url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : request.url.substr(path_start);
  httplib::Client client(origin);
  if (!client.is_valid()) throw TransportError("unsupported URL " + origin);
  const auto timeout = std::chrono::duration<double>(request.timeout_seconds);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);
  auto res = client.Post(path, headers, request.body, "application/json");
  if (!res) throw TransportError("request to " + origin + " failed: " + httplib::to_string(res.error()));
  return HttpResponse{res->status, res->body};
}

std::vector<double> MockEmbeddingTransport::VectorFor(const std::string& text, int dim) {
  Rng rng(HashString(text));
  std::vector<double> v(dim);
  for (double& x : v) x = rng.Uniform(-1.0, 1.0);
  return v;
}

HttpResponse MockEmbeddingTransport::Post(const HttpRequest& request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
  }
  json req = json::parse(request.body);
  json data = json::array();
  int i = 0;
  for (const auto& text : req.at("input")) {
    data.push_back({{"index", i++}, {"embedding", VectorFor(text.get<std::string>(), dim_)}});
  }
  return HttpResponse{200, json{{"data", data}}.dump()};
}

int MockEmbeddingTransport::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

namespace {

std::vector<double> ParseVector(const json& j) {
  if (!j.is_array()) throw Error("embedding response: vector is not an array");
  return j.get<std::vector<double>>();
}

// POST <endpoint> {"model", "input": [...]} -> {"data": [{"index", "embedding"}]}.
class OpenAiAdapter : public ProviderAdapter {
 public:
  explicit OpenAiAdapter(bool send_key) : send_key_(send_key) {}

  HttpRequest BuildRequest(const ProviderConfig& cfg, const std::vector<std::string>& texts,
                           const std::string& api_key) const override {
    HttpRequest req;
    req.url = cfg.endpoint;
    if (send_key_ && !api_key.empty()) req.headers.emplace_back("Authorization", "Bearer " + api_key);
    req.body = json{{"model", cfg.model}, {"input", texts}}.dump();
    req.timeout_seconds = cfg.timeout_seconds;
    return req;
  }

  std::vector<std::vector<double>> ParseResponse(const std::string& body,
                                                 std::size_t expected) const override {
    const json doc = json::parse(body);
    std::vector<std::vector<double>> out(expected);
    const auto& data = doc.at("data");
    if (data.size() != expected) {
      throw Error("embedding response has " + std::to_string(data.size()) + " vectors, expected " +
                  std::to_string(expected));
    }
    for (std::size_t k = 0; k < data.size(); ++k) {
      const std::size_t idx = data[k].value("index", k);
      if (idx >= expected) throw Error("embedding response index out of range");
      out[idx] = ParseVector(data[k].at("embedding"));
    }
    return out;
  }

 private:
  bool send_key_;
};

// POST <endpoint>/models/<model>:batchEmbedContents
//   {"requests": [{"model", "content": {"parts": [{"text"}]}}]}
// -> {"embeddings": [{"values": [...]}]}.
class GeminiAdapter : public ProviderAdapter {
 public:
  HttpRequest BuildRequest(const ProviderConfig& cfg, const std::vector<std::string>& texts,
                           const std::string& api_key) const override {
    HttpRequest req;
    req.url = cfg.endpoint + "/models/" + cfg.model + ":batchEmbedContents";
    if (!api_key.empty()) req.headers.emplace_back("x-goog-api-key", api_key);
    json requests = json::array();
    for (const auto& t : texts) {
      requests.push_back({{"model", "models/" + cfg.model},
                          {"content", {{"parts", json::array({{{"text", t}}})}}}});
    }
    req.body = json{{"requests", requests}}.dump();
    req.timeout_seconds = cfg.timeout_seconds;
    return req;
  }

  std::vector<std::vector<double>> ParseResponse(const std::string& body,
                                                 std::size_t expected) const override {
    const json doc = json::parse(body);
    const auto& embeddings = doc.at("embeddings");
    if (embeddings.size() != expected) {
      throw Error("embedding response has " + std::to_string(embeddings.size()) +
                  " vectors, expected " + std::to_string(expected));
    }
    std::vector<std::vector<double>> out;
    for (const auto& e : embeddings) out.push_back(ParseVector(e.at("values")));
    return out;
  }
};

std::string Sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

bool Retryable(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

std::unique_ptr<ProviderAdapter> MakeAdapter(const std::string& provider) {
  if (provider == "openai") return std::make_unique<OpenAiAdapter>(true);
  if (provider == "mock") return std::make_unique<OpenAiAdapter>(false);
  if (provider == "gemini") return std::make_unique<GeminiAdapter>();
  throw Error("unknown embedding provider '" + provider + "'");
}

std::filesystem::path EmbeddingCache::FileFor(const std::string& provider,
                                              const std::string& model) const {
  return dir_ / (Sanitize(provider) + "__" + Sanitize(model) + ".jsonl");
}

EmbeddingCache::Shard& EmbeddingCache::Load(const std::string& provider, const std::string& model) {
  auto key = std::make_pair(provider, model);
  auto it = shards_.find(key);
  if (it != shards_.end()) return it->second;
  Shard shard;
  const auto path = FileFor(provider, model);
  std::ifstream in(path, std::ios::binary);
  std::string line;
  int line_no = 0;
  while (in && std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      shard[j.at("text").get<std::string>()] = j.at("vector").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": malformed cache line: " +
                  e.what());
    }
  }
  return shards_.emplace(key, std::move(shard)).first->second;
}

std::optional<std::vector<double>> EmbeddingCache::Lookup(const std::string& provider,
                                                          const std::string& model,
                                                          const std::string& text) {
  std::lock_guard<std::mutex> lock(mu_);
  const Shard& shard = Load(provider, model);
  auto it = shard.find(text);
  if (it == shard.end()) return std::nullopt;
  return it->second;
}

void EmbeddingCache::Insert(const std::string& provider, const std::string& model,
                            const std::vector<std::pair<std::string, std::vector<double>>>& items) {
  std::lock_guard<std::mutex> lock(mu_);
  Shard& shard = Load(provider, model);
  for (const auto& [text, vec] : items) shard[text] = vec;
  std::filesystem::create_directories(dir_);
  const auto path = FileFor(provider, model);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    for (const auto& [text, vec] : shard) out << json{{"text", text}, {"vector", vec}}.dump() << '\n';
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

EmbeddingTable FetchEmbeddings(const ProviderConfig& cfg, const std::vector<std::string>& texts,
                               EmbeddingCache* cache, Transport& transport, const Sleeper& sleep) {
  cfg.Validate();
  std::vector<std::string> unique;
  {
    std::map<std::string, bool> seen;
    for (const auto& t : texts) {
      if (seen.emplace(t, true).second) unique.push_back(t);
    }
  }
  std::vector<std::optional<std::vector<double>>> vectors(unique.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (cache) vectors[i] = cache->Lookup(cfg.provider, cfg.model, unique[i]);
    if (!vectors[i]) missing.push_back(i);
  }

  if (!missing.empty()) {
    std::string key;
    if (!cfg.api_key_env.empty()) {
      const char* env = std::getenv(cfg.api_key_env.c_str());
      if (!env || !*env) {
        throw Error("environment variable " + cfg.api_key_env + " with the " + cfg.provider +
                    " API key is not set");
      }
      key = env;
    }
    const auto adapter = MakeAdapter(cfg.provider);
    const std::size_t num_batches = (missing.size() + cfg.batch_size - 1) / cfg.batch_size;
    std::vector<std::exception_ptr> errors(num_batches);
    auto run_batch = [&](std::size_t b) {
      const std::size_t lo = b * cfg.batch_size;
      const std::size_t hi = std::min(missing.size(), lo + cfg.batch_size);
      std::vector<std::string> batch;
      for (std::size_t k = lo; k < hi; ++k) batch.push_back(unique[missing[k]]);
      const HttpRequest request = adapter->BuildRequest(cfg, batch, key);
      double delay = cfg.backoff_seconds;
      std::string last_error;
      for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        if (attempt > 0) {
          if (sleep) {
            sleep(std::chrono::duration<double>(delay));
          } else {
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
          }
          delay *= 2.0;
        }
        HttpResponse response;
        try {
          response = transport.Post(request);
        } catch (const TransportError& e) {
          last_error = e.what();
          continue;
        }
        if (response.status != 200) {
          last_error = "HTTP " + std::to_string(response.status) + ": " + response.body.substr(0, 300);
          if (Retryable(response.status)) continue;
          throw Error(cfg.provider + " embedding request failed: " + last_error);
        }
        std::vector<std::vector<double>> parsed;
        try {
          parsed = adapter->ParseResponse(response.body, batch.size());
        } catch (const json::exception& e) {
          throw Error(cfg.provider + " embedding response malformed: " + e.what());
        }
        for (std::size_t k = lo; k < hi; ++k) vectors[missing[k]] = std::move(parsed[k - lo]);
        return;
      }
      throw Error(cfg.provider + " embedding request failed after " +
                  std::to_string(cfg.max_retries + 1) + " attempts: " + last_error);
    };
    const int workers = std::min<int>(cfg.max_in_flight, static_cast<int>(num_batches));
    if (workers <= 1) {
      for (std::size_t b = 0; b < num_batches; ++b) run_batch(b);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t b; (b = next++) < num_batches;) {
            try {
              run_batch(b);
            } catch (...) {
              errors[b] = std::current_exception();
            }
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
  }

  int dim = unique.empty() ? 0 : static_cast<int>(vectors.front()->size());
  EmbeddingTable table(dim, "remote:" + cfg.model);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (static_cast<int>(vectors[i]->size()) != dim) {
      throw Error("embedding dimension mismatch: '" + unique[i] + "' has " +
                  std::to_string(vectors[i]->size()) + ", expected " + std::to_string(dim));
    }
  }
  if (cache && !missing.empty()) {
    std::vector<std::pair<std::string, std::vector<double>>> fresh;
    for (std::size_t i : missing) fresh.emplace_back(unique[i], *vectors[i]);
    cache->Insert(cfg.provider, cfg.model, fresh);
  }
  for (std::size_t i = 0; i < unique.size(); ++i) table.Add(unique[i], std::move(*vectors[i]));
  return table;
}

HandTextKind ParseHandTextKind(std::string_view name) {
  if (name == "leduc_preflop") return HandTextKind::kLeducPreflop;
  if (name == "leduc_flop") return HandTextKind::kLeducFlop;
  if (name == "holdem_two_card") return HandTextKind::kHoldemTwoCard;
  throw Error("unknown hand text kind '" + std::string(name) + "'");
}

std::vector<std::string> HandTextVocabulary(HandTextKind kind) {
  std::vector<std::string> out;
  switch (kind) {
    case HandTextKind::kLeducPreflop:
      for (int i = 0; i < DomainSize(ObservationDomain::kLeducPreflop, 13); ++i) {
        out.push_back(ObservationToken(ObservationDomain::kLeducPreflop, i, 13));
      }
      break;
    case HandTextKind::kLeducFlop:
      for (int i = 0; i < DomainSize(ObservationDomain::kLeducFlop, 13); ++i) {
        out.push_back(ObservationToken(ObservationDomain::kLeducFlop, i, 13));
      }
      break;
    case HandTextKind::kHoldemTwoCard: {
      std::vector<std::string> cards;
      for (int r = 0; r < 13; ++r) {
        for (int s = 0; s < 4; ++s) cards.push_back(CardText({r, static_cast<Suit>(s)}));
      }
      for (const auto& a : cards) {
        for (const auto& b : cards) {
          if (a != b) out.push_back(a + b);
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace gamevec
