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

#ifndef MLSYL_SYLLABIFY_HPP_
#define MLSYL_SYLLABIFY_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mlsyl/script.hpp"

namespace mlsyl {

// Non-final syllable tokens carry this suffix so that words can be
// reassembled from a decoded token stream.
inline constexpr char kJoinMarker = '+';

enum class SyllableType : std::uint8_t {
  // Word-initial standalone vowel, optionally closed by a special consonant.
  Type1,
  // Consonant with optional vowel sign and optional special consonant.
  Type2,
  // Conjunct (consonants joined by viramas) with the same optional tail.
  Type3,
  // Word-final dead consonant cluster ending in a virama.
  Type4,
};

const char* SyllableTypeName(SyllableType t);

struct Syllable {
  std::u32string text;         // non-empty slice of the normalized word
  SyllableType type;
  bool joins_next;             // false only for the last syllable of a word

  std::string Utf8() const;
};

// Diagnostics accumulated while tokenizing sentences and corpora. Words that
// cannot be segmented are passed through unchanged and recorded here.
struct TokenizerDiagnostics {
  std::uint64_t words_total = 0;
  std::uint64_t words_passthrough_non_malayalam = 0;
  std::uint64_t words_unsegmentable = 0;
  std::uint64_t passthrough_tokens_ending_in_marker = 0;
  std::uint64_t lines_invalid_encoding = 0;
  // First occurrences of unsegmentable words, with the codepoint offset at
  // which no rule matched. Capped to keep reports small.
  std::vector<std::pair<std::string, std::size_t>> unsegmentable_samples;
  static constexpr std::size_t kMaxSamples = 1000;

  void RecordUnsegmentable(const std::string& word, std::size_t offset);
  void Print(std::ostream& out) const;
};

struct DetokenizerDiagnostics {
  std::uint64_t dangling_markers = 0;
};

class Syllabifier {
 public:
  explicit Syllabifier(const ScriptTable& table = ScriptTable::Builtin())
      : table_(&table) {}

  // Segments a normalized Malayalam word. Greedy leftmost-longest match over
  // the four syllable patterns; throws UnsegmentableWordError (carrying the
  // failure offset) when some suffix matches none of them.
  std::vector<Syllable> Syllabify(std::u32string_view word) const;

  // Normalizes, then segments and annotates. Non-Malayalam words come back
  // as a single pass-through token.
  std::vector<std::string> TokenizeWord(std::string_view word) const;

  // Whitespace-splits the sentence and tokenizes each word. Unsegmentable
  // words pass through unsegmented and are recorded in diag.
  std::vector<std::string> TokenizeSentence(
      std::string_view sentence, TokenizerDiagnostics* diag = nullptr) const;

  const ScriptTable& table() const { return *table_; }

 private:
  const ScriptTable* table_;
};

// Reassembles words: a token ending in the join marker is glued to its
// successor; anything else ends a word. A trailing marker on the last token
// is stripped and counted as a dangling marker.
std::string Detokenize(const std::vector<std::string>& tokens,
                       DetokenizerDiagnostics* diag = nullptr);

enum class TokenMode { Word, Syllable };

// Rewrites a line-oriented corpus: Word mode emits each line's normalized
// words, Syllable mode replaces each line with its marker-annotated token
// stream. Lines that are not valid UTF-8 are dropped and counted in diag.
void TokenizeCorpus(std::istream& in, std::ostream& out, TokenMode mode,
                    const Syllabifier& syllabifier,
                    TokenizerDiagnostics* diag = nullptr);

}  // namespace mlsyl

#endif  // MLSYL_SYLLABIFY_HPP_
