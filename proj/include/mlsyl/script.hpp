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

#ifndef MLSYL_SCRIPT_HPP_
#define MLSYL_SCRIPT_HPP_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mlsyl {

// Character classes of the Malayalam script as used by the syllabifier.
// Codepoints outside the loaded table are NonMalayalam.
enum class CharClass {
  Vowel,
  VowelSign,
  Consonant,
  Anuswara,
  Visarga,
  Chillu,
  Virama,
  NonMalayalam,
};

// Anuswara, visarga and chillu form the special consonant group: they are
// pure consonants that always close a syllable.
inline bool IsSpecialConsonant(CharClass c) {
  return c == CharClass::Anuswara || c == CharClass::Visarga ||
         c == CharClass::Chillu;
}

const char* CharClassName(CharClass c);

// Codepoint -> class map. Loaded from a tab separated table
// (`U+XXXX<TAB>ClassName` per line) so that the classification is auditable
// and can be overridden without rebuilding.
class ScriptTable {
 public:
  // The table compiled in from data/char_classes.tsv.
  static const ScriptTable& Builtin();

  static ScriptTable FromFile(const std::string& path);
  static ScriptTable FromText(std::string_view text, const std::string& origin);

  // Total over all scalar values; unlisted codepoints are NonMalayalam.
  CharClass Classify(char32_t cp) const;

  // True iff the word is non-empty and every codepoint is Malayalam.
  bool IsMalayalamWord(std::u32string_view word) const;
  bool IsMalayalamWord(std::string_view utf8_word) const;

  std::size_t size() const { return classes_.size(); }

  const std::unordered_map<char32_t, CharClass>& entries() const {
    return classes_;
  }

 private:
  std::unordered_map<char32_t, CharClass> classes_;
};

// Per-word provenance flags recorded by Normalize.
struct WordFlags {
  bool had_legacy_chillu = false;
  bool had_zero_width_chars = false;
  bool contains_non_malayalam = false;
};

// Text in canonical form: two-part vowel signs composed, legacy chillu
// sequences (consonant + virama + ZWJ) rewritten to atomic chillus, and
// zero-width joiners/non-joiners removed.
struct NormalizedText {
  std::u32string codepoints;
  std::vector<WordFlags> word_flags;  // one entry per whitespace word

  std::string Utf8() const;
};

// Throws InvalidEncodingError if the input is not valid UTF-8.
NormalizedText Normalize(std::string_view utf8,
                         const ScriptTable& table = ScriptTable::Builtin());
std::u32string NormalizeWord(std::u32string_view word,
                             const ScriptTable& table, WordFlags* flags);

}  // namespace mlsyl

#endif  // MLSYL_SCRIPT_HPP_
