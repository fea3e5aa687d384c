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

#ifndef MLSYL_SIMULATE_HPP_
#define MLSYL_SIMULATE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mlsyl {

// Controlled token corruption standing in for a decoder: random
// substitutions, deletions and insertions at fixed rates, reproducible from
// the seed. When a vocabulary is given, the corruption models a
// closed-vocabulary decoder: input tokens outside the vocabulary are always
// substituted, and every replacement or insertion is drawn from it.
struct SimulateOptions {
  double substitution_rate = 0.0;
  double deletion_rate = 0.0;
  double insertion_rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> vocabulary;
  // Syllable streams carry '+' join markers. With preserve_markers a
  // substitution corrupts only the token text: the replacement takes the
  // original's marker, so word boundaries survive the corruption.
  bool preserve_markers = false;
};

struct SimulateStats {
  std::uint64_t lines = 0;
  std::uint64_t tokens_in = 0;
  std::uint64_t substituted = 0;
  std::uint64_t forced_substitutions = 0;  // out-of-vocabulary inputs
  std::uint64_t deleted = 0;
  std::uint64_t inserted = 0;
};

// Line structure is preserved. Draw order per token is fixed (deletion,
// substitution, insertion; a draw happens only when its rate is positive and,
// for substitution, the token was not already forced), so output is a pure
// function of input, options and seed. Throws ConfigError on rates outside
// [0, 1].
void SimulateErrors(std::istream& in, std::ostream& out,
                    const SimulateOptions& options,
                    SimulateStats* stats = nullptr);

}  // namespace mlsyl

#endif  // MLSYL_SIMULATE_HPP_
