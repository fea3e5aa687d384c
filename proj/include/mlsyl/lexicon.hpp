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

#ifndef MLSYL_LEXICON_HPP_
#define MLSYL_LEXICON_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlsyl/corpus.hpp"
#include "mlsyl/script.hpp"
#include "mlsyl/syllabify.hpp"

namespace mlsyl {

// Codepoint -> phone sequence map plus class-level defaults. Loaded from a
// tab separated table (`U+XXXX<TAB>phones` or `ClassName<TAB>phones`); the
// `inherent` row carries the inherent vowel phone. Virama has no row: it
// deletes the inherent vowel instead of producing a phone.
class PhoneTable {
 public:
  // The table compiled in from data/phones.tsv.
  static const PhoneTable& Builtin();

  static PhoneTable FromFile(const std::string& path);
  static PhoneTable FromText(std::string_view text, const std::string& origin);

  // Phones for a codepoint, or nullptr when the table has no row for it.
  const std::vector<std::string>* Lookup(char32_t cp) const;

  const std::vector<std::string>& InherentVowel() const { return inherent_; }

  // Class-level fallback for Anuswara and Visarga rows; nullptr otherwise.
  const std::vector<std::string>* ClassDefault(CharClass cls) const;

  std::size_t size() const { return by_codepoint_.size(); }

 private:
  std::unordered_map<char32_t, std::vector<std::string>> by_codepoint_;
  std::vector<std::string> inherent_;
  std::vector<std::string> anuswara_;
  std::vector<std::string> visarga_;
};

// Converts a word or syllable token (a trailing join marker is stripped) to
// its phone sequence. Rules, applied left to right:
//   vowel            -> its phone(s)
//   consonant        -> base phone(s); inherent vowel appended unless a
//                       virama or vowel sign follows
//   vowel sign       -> its phone(s)
//   virama           -> nothing
//   chillu           -> its bare consonant phone
//   anuswara/visarga -> its phone(s), class default when no codepoint row
// Throws UnmappedCodepointError for anything else.
std::vector<std::string> GraphemeToPhonemes(
    std::string_view token, const PhoneTable& phones = PhoneTable::Builtin(),
    const ScriptTable& script = ScriptTable::Builtin());

enum class LexiconKind { Word, Syllable };

// Token -> phone sequence map. std::map keeps tokens in byte order, which
// for UTF-8 equals codepoint order, so serialization is deterministic.
struct Lexicon {
  LexiconKind kind = LexiconKind::Word;
  std::map<std::string, std::vector<std::string>> entries;
  std::optional<std::uint64_t> source_threshold;

  std::size_t size() const { return entries.size(); }
};

// Words skipped during a build, with the reason.
struct LexiconBuildReport {
  std::vector<std::pair<std::string, std::string>> skipped;
};

// Word lexicon over base_words plus, when min_count is set, every corpus
// token with count >= min_count. Words are normalized before lookup; words
// whose conversion fails are skipped and reported. Throws EmptyBaseError.
Lexicon BuildWordLexicon(const std::vector<std::string>& base_words,
                         const FrequencyTable& corpus_freqs,
                         std::optional<std::uint64_t> min_count,
                         const PhoneTable& phones = PhoneTable::Builtin(),
                         const ScriptTable& script = ScriptTable::Builtin(),
                         LexiconBuildReport* report = nullptr);

// Unique marker-annotated syllable tokens of every word in word_lexicon,
// each with phones from the marker-stripped text. Unsegmentable words are
// skipped and reported.
Lexicon DeriveSyllableLexicon(const Lexicon& word_lexicon,
                              const Syllabifier& syllabifier,
                              const PhoneTable& phones = PhoneTable::Builtin(),
                              LexiconBuildReport* report = nullptr);

// One row per word whose syllable-phone concatenation differs from its own
// phone row (or whose tokens are missing from the syllable lexicon).
struct ConsistencyReport {
  std::uint64_t words_checked = 0;
  std::vector<std::pair<std::string, std::string>> violations;
};

ConsistencyReport VerifyPronunciationConsistency(
    const Lexicon& word_lexicon, const Lexicon& syllable_lexicon,
    const Syllabifier& syllabifier);

// Serialization: `token<TAB>phone phone ...` lines sorted by token, LF
// endings. Reading throws MalformedLineError or DuplicateTokenError.
void WriteLexicon(const Lexicon& lexicon, std::ostream& out);
void WriteLexiconFile(const Lexicon& lexicon, const std::string& path);
Lexicon ReadLexicon(std::istream& in, const std::string& origin,
                    LexiconKind kind = LexiconKind::Word);
Lexicon ReadLexiconFile(const std::string& path,
                        LexiconKind kind = LexiconKind::Word);

}  // namespace mlsyl

#endif  // MLSYL_LEXICON_HPP_
