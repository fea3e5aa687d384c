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

#ifndef MLSYL_EVALUATE_HPP_
#define MLSYL_EVALUATE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mlsyl/lexicon.hpp"
#include "mlsyl/syllabify.hpp"

namespace mlsyl {

enum class EditOp { Match, Substitution, Deletion, Insertion };

struct AlignmentStep {
  EditOp op;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct Alignment {
  std::vector<AlignmentStep> steps;
  std::uint64_t matches = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t insertions = 0;

  std::uint64_t Distance() const {
    return substitutions + deletions + insertions;
  }
};

// Minimum edit distance under unit costs. Ties during backtrace prefer
// match > substitution > deletion > insertion so the I/D/S split is
// reproducible.
Alignment Align(const std::vector<std::string>& reference,
                const std::vector<std::string>& hypothesis);

struct WerReport {
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t matches = 0;
  std::uint64_t reference_words = 0;

  // (I + D + S) / N; exceeds 1 when the hypothesis inserts enough.
  double Wer() const {
    return static_cast<double>(insertions + deletions + substitutions) /
           static_cast<double>(reference_words);
  }
};

// Throws EmptyReferenceError when reference_words is zero.
WerReport Wer(const Alignment& alignment, std::uint64_t reference_words);

// Reconstructs words from the marker-annotated hypothesis tokens, then
// scores at the word level. Both sides are codepoint-normalized.
WerReport ScoreSubwordHypothesis(const std::string& reference_text,
                                 const std::vector<std::string>& hypothesis_tokens);

// Line-parallel corpus scoring; counts accumulate over lines. With
// subword_hypothesis, each hypothesis line is detokenized first. Line count
// mismatch raises Error.
WerReport ScoreCorpus(const std::vector<std::string>& reference_lines,
                      const std::vector<std::string>& hypothesis_lines,
                      bool subword_hypothesis);

enum class OovUnit { Word, SyllableToken };

struct OovReport {
  OovUnit unit = OovUnit::Word;
  bool type_based = false;
  std::size_t lexicon_size = 0;
  std::uint64_t test_tokens = 0;  // occurrences, or distinct types
  std::uint64_t oov_tokens = 0;

  double Rate() const {
    return test_tokens == 0
               ? 0.0
               : static_cast<double>(oov_tokens) /
                     static_cast<double>(test_tokens);
  }
};

// Fraction of test tokens absent from the lexicon. Word unit looks up
// normalized words; syllable unit tokenizes first and looks up the
// marker-annotated tokens. type_based counts each distinct token once.
// Throws EmptyCorpusError when the test stream yields no tokens.
OovReport OovRate(const Lexicon& lexicon, std::istream& test_corpus,
                  OovUnit unit, bool type_based = false,
                  const Syllabifier& syllabifier = Syllabifier());

struct ProfileRow {
  std::uint64_t rank = 0;
  std::string token;
  std::uint64_t count = 0;
  double cumulative_coverage = 0.0;
};

// Tokens ranked by descending count (ties by token order) with the fraction
// of the corpus covered by ranks 1..k. Throws EmptyCorpusError.
std::vector<ProfileRow> FrequencyProfile(std::istream& corpus);

// `rank<TAB>token<TAB>count<TAB>cumulative_coverage` lines.
void WriteProfile(const std::vector<ProfileRow>& rows, std::ostream& out);

struct MeanLengthReport {
  double mean_syllables = 0.0;
  std::uint64_t words_measured = 0;
  std::uint64_t words_skipped = 0;  // non-Malayalam or unsegmentable
};

// Arithmetic mean syllable count over tokenizable words. Throws
// NoTokenizableWordsError when nothing tokenizes.
MeanLengthReport MeanWordLengthSyllables(
    std::istream& corpus, const Syllabifier& syllabifier = Syllabifier());

struct DedupResult {
  std::vector<std::string> kept_lines;
  std::uint64_t removed = 0;
};

// Removes every corpus line whose canonical form (normalized codepoints,
// collapsed whitespace) equals some test line's canonical form.
DedupResult DedupCorpus(const std::vector<std::string>& corpus_lines,
                        const std::vector<std::string>& test_lines,
                        const ScriptTable& table = ScriptTable::Builtin());

}  // namespace mlsyl

#endif  // MLSYL_EVALUATE_HPP_
