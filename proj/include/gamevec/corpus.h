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


#ifndef GAMEVEC_CORPUS_H_
#define GAMEVEC_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gamevec/game_tree.h"
#include "gamevec/sequence_form.h"

namespace gamevec {

// One playthrough (or external document) per line; tokens carry no
// whitespace and lines are non-empty.
struct Corpus {
  std::vector<std::vector<std::string>> lines;

  std::size_t num_tokens() const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct SampleOptions {
  // Append the "<u1>,<u2>" payoff token to each line.
  bool payoff_token = true;
  // Lines are produced in shards of this size, each from its own stream
  // seeded by (seed, shard); output is independent of `threads`.
  int shard_size = 65536;
  int threads = 1;
};

// Samples n playthroughs by walking the tree: chance by its probabilities,
// decisions by `profile`. Tokens are the edge labels along the path, e.g.
// "57? ?12 c B f -1,1". Throws Error when a reached infoset has no
// distribution in `profile`.
Corpus SamplePlaythroughs(const GameTree& game, const BehavioralProfile& profile,
                          std::int64_t n, std::uint64_t seed, const SampleOptions& options = {});

// Payoff token for a terminal utility of player 1: "<u1>,<u2>".
std::string PayoffToken(double u1);

// Reader accepts any whitespace-separated text and LF or CRLF endings;
// blank lines are skipped. Writer uses single spaces and LF.
Corpus ReadCorpus(const std::filesystem::path& path);
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);

// Tokens with count >= min_count, ids by descending count then token.
struct Vocabulary {
  int min_count = 1;
  std::vector<std::string> tokens;
  std::vector<std::int64_t> counts;

  std::size_t size() const { return tokens.size(); }
  // -1 when absent.
  int Id(std::string_view token) const;

 private:
  friend Vocabulary BuildVocab(const Corpus& corpus, int min_count);
  std::unordered_map<std::string, int> ids_;
};

Vocabulary BuildVocab(const Corpus& corpus, int min_count);

}  // namespace gamevec

#endif  // GAMEVEC_CORPUS_H_
