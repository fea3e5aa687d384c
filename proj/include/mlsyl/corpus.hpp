// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLSYL_CORPUS_HPP_
#define MLSYL_CORPUS_HPP_

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mlsyl {

// Splits on runs of ASCII whitespace; never returns empty tokens.
std::vector<std::string> SplitTokens(std::string_view line);

std::string JoinTokens(const std::vector<std::string>& tokens);

// Reads all lines, stripping trailing '\r'. The final line needs no newline.
std::vector<std::string> ReadLines(std::istream& in);

// Opens for reading; throws ConfigError if the file cannot be opened.
std::ifstream OpenInputFile(const std::string& path);

// Opens for writing (truncate); throws ConfigError on failure.
std::ofstream OpenOutputFile(const std::string& path);

std::vector<std::string> ReadLinesFile(const std::string& path);

// Token frequency counts over a corpus.
struct FrequencyTable {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void Add(const std::string& token, std::uint64_t n = 1);
  void AddTokens(const std::vector<std::string>& tokens);

  // Entries ordered by count descending, ties broken by token ascending, so
  // ranks are stable across runs.
  std::vector<std::pair<std::string, std::uint64_t>> Ranked() const;
};

}  // namespace mlsyl

#endif  // MLSYL_CORPUS_HPP_
