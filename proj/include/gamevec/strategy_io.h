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


#ifndef GAMEVEC_STRATEGY_IO_H_
#define GAMEVEC_STRATEGY_IO_H_

#include <filesystem>
#include <string>

#include "gamevec/game_tree.h"
#include "gamevec/sequence_form.h"

namespace gamevec {

// JSON {"game": name, "strategy": {infoset key: [probabilities]}}, gzip
// compressed when the path ends in ".gz".
void SaveStrategy(const GameTree& game, const BehavioralProfile& profile,
                  const std::filesystem::path& path);

// Reads plain or gzip files (detected by content). Throws Error when an
// infoset of `game` is missing, a key is unknown, or a distribution has
// the wrong length or does not sum to 1 within 1e-6.
BehavioralProfile LoadStrategy(const GameTree& game, const std::filesystem::path& path);

// Whole file, transparently inflating gzip content.
std::string ReadMaybeGzip(const std::filesystem::path& path);
void WriteMaybeGzip(const std::filesystem::path& path, const std::string& data);

}  // namespace gamevec

#endif  // GAMEVEC_STRATEGY_IO_H_
