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

#include "mlsyl/syllabify.hpp"

#include <istream>
#include <ostream>

#include "mlsyl/errors.hpp"
#include "mlsyl/utf8.hpp"

namespace mlsyl {

namespace {

bool IsSpace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v';
}

std::vector<std::u32string> SplitWords(std::u32string_view text) {
  std::vector<std::u32string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

}  // namespace

const char* SyllableTypeName(SyllableType t) {
  switch (t) {
    case SyllableType::Type1: return "Type1";
    case SyllableType::Type2: return "Type2";
    case SyllableType::Type3: return "Type3";
    case SyllableType::Type4: return "Type4";
  }
  return "Type2";
}

std::string Syllable::Utf8() const { return EncodeUtf8(text); }

void TokenizerDiagnostics::RecordUnsegmentable(const std::string& word,
                                               std::size_t offset) {
  ++words_unsegmentable;
  if (unsegmentable_samples.size() < kMaxSamples)
    unsegmentable_samples.emplace_back(word, offset);
}

void TokenizerDiagnostics::Print(std::ostream& out) const {
  out << "words\t" << words_total << "\n";
  out << "passthrough_non_malayalam\t" << words_passthrough_non_malayalam
      << "\n";
  out << "unsegmentable\t" << words_unsegmentable << "\n";
  out << "passthrough_tokens_ending_in_marker\t"
      << passthrough_tokens_ending_in_marker << "\n";
  out << "lines_invalid_encoding\t" << lines_invalid_encoding << "\n";
  for (const auto& [word, offset] : unsegmentable_samples)
    out << "unsegmentable_word\t" << word << "\t" << offset << "\n";
}

std::vector<Syllable> Syllabifier::Syllabify(std::u32string_view word) const {
  const std::size_t n = word.size();
  if (n == 0) throw UnsegmentableWordError("", 0);
  std::vector<Syllable> out;
  std::size_t i = 0;
  while (i < n) {
    std::size_t best_len = 0;
    SyllableType best_type = SyllableType::Type2;
    const CharClass c0 = table_->Classify(word[i]);
    if (i == 0 && c0 == CharClass::Vowel) {
      // Type 1: word-initial vowel, optionally closed by a special consonant.
      std::size_t len = 1;
      if (n > 1 && IsSpecialConsonant(table_->Classify(word[1]))) len = 2;
      best_len = len;
      best_type = SyllableType::Type1;
    } else if (c0 == CharClass::Consonant) {
      // Longest run of (consonant, virama) pairs starting at i.
      std::size_t j = i;
      while (j + 1 < n && table_->Classify(word[j]) == CharClass::Consonant &&
             table_->Classify(word[j + 1]) == CharClass::Virama) {
        j += 2;
      }
      const std::size_t pairs = (j - i) / 2;
      if (j == n && pairs >= 1) {
        // Type 4: the pair run reaches the end of the word, so this is a
        // word-final dead consonant cluster. Longest candidate here.
        best_len = 2 * pairs;
        best_type = SyllableType::Type4;
      } else if (j < n && table_->Classify(word[j]) == CharClass::Consonant) {
        // Type 2/3: pairs (possibly none) + consonant + optional vowel sign
        // + optional special consonant. The special always ends the syllable.
        std::size_t len = (j - i) + 1;
        std::size_t k = j + 1;
        if (k < n && table_->Classify(word[k]) == CharClass::VowelSign) {
          ++len;
          ++k;
        }
        if (k < n && IsSpecialConsonant(table_->Classify(word[k]))) {
          ++len;
          ++k;
        }
        best_len = len;
        best_type = pairs >= 1 ? SyllableType::Type3 : SyllableType::Type2;
      } else if (pairs >= 2) {
        // Pair run hit a non-consonant mid-word: fall back to the longest
        // conjunct ending on the last run consonant.
        best_len = 2 * (pairs - 1) + 1;
        best_type = SyllableType::Type3;
      } else {
        // Bare consonant; the following virama (or stray mark) will fail on
        // the next round, which is the faithful greedy failure position.
        best_len = 1;
        best_type = SyllableType::Type2;
      }
    }
    if (best_len == 0) throw UnsegmentableWordError(EncodeUtf8(word), i);
    out.push_back(Syllable{std::u32string(word.substr(i, best_len)), best_type,
                           /*joins_next=*/true});
    i += best_len;
  }
  out.back().joins_next = false;
  return out;
}

std::vector<std::string> Syllabifier::TokenizeWord(
    std::string_view word) const {
  WordFlags flags;
  std::u32string norm = NormalizeWord(DecodeUtf8(word), *table_, &flags);
  if (!table_->IsMalayalamWord(norm)) return {EncodeUtf8(norm)};
  std::vector<Syllable> syllables = Syllabify(norm);
  std::vector<std::string> tokens;
  tokens.reserve(syllables.size());
  for (const Syllable& s : syllables) {
    std::string t = s.Utf8();
    if (s.joins_next) t.push_back(kJoinMarker);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<std::string> Syllabifier::TokenizeSentence(
    std::string_view sentence, TokenizerDiagnostics* diag) const {
  NormalizedText norm = Normalize(sentence, *table_);
  std::vector<std::string> tokens;
  for (const std::u32string& word : SplitWords(norm.codepoints)) {
    if (diag) ++diag->words_total;
    const std::string utf8 = EncodeUtf8(word);
    if (!table_->IsMalayalamWord(word)) {
      if (diag) {
        ++diag->words_passthrough_non_malayalam;
        if (!utf8.empty() && utf8.back() == kJoinMarker)
          ++diag->passthrough_tokens_ending_in_marker;
      }
      tokens.push_back(utf8);
      continue;
    }
    try {
      for (const Syllable& s : Syllabify(word)) {
        std::string t = s.Utf8();
        if (s.joins_next) t.push_back(kJoinMarker);
        tokens.push_back(std::move(t));
      }
    } catch (const UnsegmentableWordError& e) {
      if (diag) diag->RecordUnsegmentable(utf8, e.codepoint_offset());
      tokens.push_back(utf8);
    }
  }
  return tokens;
}

std::string Detokenize(const std::vector<std::string>& tokens,
                       DetokenizerDiagnostics* diag) {
  std::string out;
  std::string word;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    const bool joins = !t.empty() && t.back() == kJoinMarker;
    word.append(t, 0, joins ? t.size() - 1 : t.size());
    if (joins && i + 1 == tokens.size()) {
      if (diag) ++diag->dangling_markers;
    }
    if (!joins || i + 1 == tokens.size()) {
      if (!out.empty()) out.push_back(' ');
      out.append(word);
      word.clear();
    }
  }
  return out;
}

void TokenizeCorpus(std::istream& in, std::ostream& out, TokenMode mode,
                    const Syllabifier& syllabifier,
                    TokenizerDiagnostics* diag) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!IsValidUtf8(line)) {
      if (diag) ++diag->lines_invalid_encoding;
      continue;
    }
    std::vector<std::string> tokens;
    if (mode == TokenMode::Word) {
      NormalizedText norm = Normalize(line, syllabifier.table());
      for (const std::u32string& w : SplitWords(norm.codepoints)) {
        if (diag) ++diag->words_total;
        tokens.push_back(EncodeUtf8(w));
      }
    } else {
      tokens = syllabifier.TokenizeSentence(line, diag);
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out << ' ';
      out << tokens[i];
    }
    out << '\n';
  }
}

}  // namespace mlsyl
