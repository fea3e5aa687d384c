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

#include "mlsyl/simulate.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <unordered_set>

#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/syllabify.hpp"

namespace mlsyl {

namespace {

// mt19937_64 output is fixed by the standard, so these derived draws are
// identical on every platform.
double UniformUnit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::uint64_t UniformBelow(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t min = (~n + 1) % n;  // (2^64 - n) mod n
  for (;;) {
    const std::uint64_t x = gen();
    if (x >= min) return x % n;
  }
}

void CheckRate(double rate, const char* name) {
  if (rate < 0.0 || rate > 1.0)
    throw ConfigError(std::string(name) + " must be in [0, 1]");
}

}  // namespace

void SimulateErrors(std::istream& in, std::ostream& out,
                    const SimulateOptions& options, SimulateStats* stats) {
  CheckRate(options.substitution_rate, "substitution rate");
  CheckRate(options.deletion_rate, "deletion rate");
  CheckRate(options.insertion_rate, "insertion rate");

  const std::vector<std::string> lines = ReadLines(in);

  // Replacement pool: the vocabulary when given, else the input's own token
  // inventory. Sorted so draws are independent of hash order.
  std::vector<std::string> pool;
  if (options.vocabulary.empty()) {
    std::set<std::string> inventory;
    for (const std::string& line : lines) {
      for (std::string& t : SplitTokens(line)) inventory.insert(std::move(t));
    }
    pool.assign(inventory.begin(), inventory.end());
  } else {
    pool = options.vocabulary;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }
  const std::unordered_set<std::string> vocab_set(options.vocabulary.begin(),
                                                  options.vocabulary.end());

  std::mt19937_64 gen(options.seed);
  auto draw_replacement = [&](const std::string& original) -> std::string {
    if (pool.empty()) return original;
    std::uint64_t idx = UniformBelow(gen, pool.size());
    if (pool[idx] == original && pool.size() > 1)
      idx = (idx + 1) % pool.size();
    std::string replacement = pool[idx];
    if (options.preserve_markers) {
      if (!replacement.empty() && replacement.back() == kJoinMarker)
        replacement.pop_back();
      if (!original.empty() && original.back() == kJoinMarker)
        replacement.push_back(kJoinMarker);
      if (replacement.empty() || replacement == original)
        return original;
    }
    return replacement;
  };

  for (const std::string& line : lines) {
    if (stats) ++stats->lines;
    std::vector<std::string> tokens = SplitTokens(line);
    std::vector<std::string> result;
    result.reserve(tokens.size());
    for (std::string& token : tokens) {
      if (stats) ++stats->tokens_in;
      if (options.deletion_rate > 0 &&
          UniformUnit(gen) < options.deletion_rate) {
        if (stats) ++stats->deleted;
        continue;
      }
      const bool forced =
          !vocab_set.empty() && vocab_set.count(token) == 0;
      bool substitute = forced;
      if (!forced && options.substitution_rate > 0)
        substitute = UniformUnit(gen) < options.substitution_rate;
      if (substitute) {
        if (stats) {
          ++stats->substituted;
          if (forced) ++stats->forced_substitutions;
        }
        result.push_back(draw_replacement(token));
      } else {
        result.push_back(std::move(token));
      }
      if (options.insertion_rate > 0 &&
          UniformUnit(gen) < options.insertion_rate && !pool.empty()) {
        if (stats) ++stats->inserted;
        result.push_back(pool[UniformBelow(gen, pool.size())]);
      }
    }
    out << JoinTokens(result) << '\n';
  }
}

}  // namespace mlsyl
