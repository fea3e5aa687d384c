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

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/simulate.hpp"

namespace mlsyl {
namespace {

std::string Run(const std::string& input, const SimulateOptions& options,
                SimulateStats* stats = nullptr) {
  std::istringstream in(input);
  std::ostringstream out;
  SimulateErrors(in, out, options, stats);
  return out.str();
}

const std::string kCorpus =
    "the quick brown fox jumps over the lazy dog\n"
    "pack my box with five dozen liquor jugs\n"
    "how vexingly quick daft zebras jump\n";

TEST_CASE("simulate: zero rates are the identity") {
  SimulateOptions opt;
  opt.seed = 7;
  SimulateStats stats;
  CHECK(Run(kCorpus, opt, &stats) == kCorpus);
  CHECK(stats.lines == 3);
  CHECK(stats.tokens_in == 23);
  CHECK(stats.substituted == 0);
  CHECK(stats.forced_substitutions == 0);
  CHECK(stats.deleted == 0);
  CHECK(stats.inserted == 0);
}

TEST_CASE("simulate: reproducible from the seed") {
  SimulateOptions opt;
  opt.substitution_rate = 0.3;
  opt.deletion_rate = 0.1;
  opt.insertion_rate = 0.1;
  opt.seed = 42;
  const std::string first = Run(kCorpus, opt);
  const std::string second = Run(kCorpus, opt);
  CHECK(first == second);

  SimulateOptions other = opt;
  other.seed = 43;
  CHECK(Run(kCorpus, other) != first);
}

TEST_CASE("simulate: substitution rate one corrupts every token") {
  SimulateOptions opt;
  opt.substitution_rate = 1.0;
  opt.seed = 5;
  SimulateStats stats;
  const std::string out = Run(kCorpus, opt, &stats);
  CHECK(stats.substituted == stats.tokens_in);
  CHECK(stats.deleted == 0);
  CHECK(stats.inserted == 0);
  // Replacements come from the input's own token inventory, shifted away
  // from the original, so no token survives in place.
  std::istringstream in_s(kCorpus), out_s(out);
  std::string in_line, out_line;
  while (std::getline(in_s, in_line) && std::getline(out_s, out_line)) {
    const auto before = SplitTokens(in_line);
    const auto after = SplitTokens(out_line);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(before[i] != after[i]);
    }
  }
}

TEST_CASE("simulate: line structure always survives") {
  SimulateOptions opt;
  opt.substitution_rate = 0.5;
  opt.deletion_rate = 0.4;
  opt.insertion_rate = 0.4;
  opt.seed = 99;
  SimulateStats stats;
  const std::string out = Run(kCorpus, opt, &stats);
  CHECK(std::count(out.begin(), out.end(), '\n') == 3);
  CHECK(stats.lines == 3);

  std::uint64_t tokens_out = 0;
  std::istringstream out_s(out);
  std::string line;
  while (std::getline(out_s, line)) tokens_out += SplitTokens(line).size();
  CHECK(tokens_out == stats.tokens_in - stats.deleted + stats.inserted);
}

TEST_CASE("simulate: closed vocabulary forces out-of-vocabulary inputs") {
  SimulateOptions opt;
  opt.seed = 11;
  opt.vocabulary = {"the", "quick", "fox", "dog", "my", "box", "jump"};

  SUBCASE("at rate zero only forced substitutions fire") {
    SimulateStats stats;
    const std::string out = Run(kCorpus, opt, &stats);
    std::set<std::string> vocab(opt.vocabulary.begin(),
                                opt.vocabulary.end());
    std::uint64_t oov_in = 0;
    std::istringstream in_s(kCorpus);
    std::string line;
    while (std::getline(in_s, line)) {
      for (const std::string& t : SplitTokens(line)) {
        if (!vocab.count(t)) ++oov_in;
      }
    }
    CHECK(stats.forced_substitutions == oov_in);
    CHECK(stats.substituted == oov_in);
    CHECK(oov_in > 0);
    // Every output token is drawn from (or already in) the vocabulary.
    std::istringstream out_s(out);
    while (std::getline(out_s, line)) {
      for (const std::string& t : SplitTokens(line)) {
        CHECK(vocab.count(t) == 1);
      }
    }
  }

  SUBCASE("in-vocabulary corpus has no forced substitutions") {
    SimulateStats stats;
    const std::string out = Run("the quick fox\n", opt, &stats);
    CHECK(stats.forced_substitutions == 0);
    CHECK(out == "the quick fox\n");
  }
}

TEST_CASE("simulate: deletion-only and insertion-only accounting") {
  SUBCASE("deletions only shrink") {
    SimulateOptions opt;
    opt.deletion_rate = 0.5;
    opt.seed = 3;
    SimulateStats stats;
    const std::string out = Run(kCorpus, opt, &stats);
    CHECK(stats.substituted == 0);
    CHECK(stats.inserted == 0);
    CHECK(stats.deleted > 0);
    std::uint64_t tokens_out = 0;
    std::istringstream out_s(out);
    std::string line;
    while (std::getline(out_s, line)) tokens_out += SplitTokens(line).size();
    CHECK(tokens_out == stats.tokens_in - stats.deleted);
    // Surviving tokens keep their relative order.
    std::istringstream in_s(kCorpus);
    std::istringstream out_again(out);
    std::string in_line, out_line;
    while (std::getline(in_s, in_line) && std::getline(out_again, out_line)) {
      const auto before = SplitTokens(in_line);
      const auto after = SplitTokens(out_line);
      std::size_t pos = 0;
      for (const std::string& t : after) {
        while (pos < before.size() && before[pos] != t) ++pos;
        REQUIRE(pos < before.size());
        ++pos;
      }
    }
  }

  SUBCASE("insertions only grow") {
    SimulateOptions opt;
    opt.insertion_rate = 0.5;
    opt.seed = 3;
    SimulateStats stats;
    const std::string out = Run(kCorpus, opt, &stats);
    CHECK(stats.substituted == 0);
    CHECK(stats.deleted == 0);
    CHECK(stats.inserted > 0);
    std::uint64_t tokens_out = 0;
    std::istringstream out_s(out);
    std::string line;
    while (std::getline(out_s, line)) tokens_out += SplitTokens(line).size();
    CHECK(tokens_out == stats.tokens_in + stats.inserted);
  }
}

TEST_CASE("simulate: preserved markers keep word boundaries") {
  const std::string syllables = "അ+ വൻ വ+ ള ഇ+ ടു+ ക+ യി+ ല്ല\n";
  SimulateOptions opt;
  opt.substitution_rate = 1.0;
  opt.seed = 17;
  opt.preserve_markers = true;

  SimulateStats stats;
  const std::string out = Run(syllables, opt, &stats);
  const auto before = SplitTokens(syllables);
  const auto after = SplitTokens(out.substr(0, out.size() - 1));
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK((before[i].back() == '+') == (after[i].back() == '+'));
  }
  CHECK(stats.substituted == before.size());
}

TEST_CASE("simulate: rates outside the unit interval are rejected") {
  SimulateOptions opt;
  opt.substitution_rate = 1.5;
  std::istringstream in("a\n");
  std::ostringstream out;
  CHECK_THROWS_AS(SimulateErrors(in, out, opt, nullptr), ConfigError);

  SimulateOptions neg;
  neg.deletion_rate = -0.1;
  std::istringstream in2("a\n");
  CHECK_THROWS_AS(SimulateErrors(in2, out, neg, nullptr), ConfigError);

  SimulateOptions ins;
  ins.insertion_rate = 2.0;
  std::istringstream in3("a\n");
  CHECK_THROWS_AS(SimulateErrors(in3, out, ins, nullptr), ConfigError);
}

}  // namespace
}  // namespace mlsyl
