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

#include "mlsyl/lexicon.hpp"

#include <istream>
#include <ostream>

#include "mlsyl/default_tables.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/utf8.hpp"
#include "table_io.hpp"

namespace mlsyl {

const PhoneTable& PhoneTable::Builtin() {
  static const PhoneTable table =
      FromText(detail::kDefaultPhoneTable, "<builtin phone table>");
  return table;
}

PhoneTable PhoneTable::FromFile(const std::string& path) {
  return FromText(detail::ReadFileText(path, "phone table"), path);
}

PhoneTable PhoneTable::FromText(std::string_view text,
                                const std::string& origin) {
  PhoneTable table;
  detail::ForEachTableRow(
      text, origin,
      [&](std::size_t line_no, std::string_view key, std::string_view value) {
        std::vector<std::string> phones = SplitTokens(value);
        if (phones.empty())
          throw MalformedLineError(origin, line_no, "empty phone list");
        if (key == "inherent") {
          table.inherent_ = std::move(phones);
        } else if (key == "Anuswara") {
          table.anuswara_ = std::move(phones);
        } else if (key == "Visarga") {
          table.visarga_ = std::move(phones);
        } else {
          char32_t cp;
          if (!detail::ParseCodepointLiteral(key, &cp))
            throw MalformedLineError(origin, line_no,
                                     "expected U+XXXX or class key");
          table.by_codepoint_[cp] = std::move(phones);
        }
      });
  if (table.inherent_.empty())
    throw MalformedLineError(origin, 0, "missing 'inherent' row");
  return table;
}

const std::vector<std::string>* PhoneTable::Lookup(char32_t cp) const {
  auto it = by_codepoint_.find(cp);
  return it == by_codepoint_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* PhoneTable::ClassDefault(CharClass cls) const {
  if (cls == CharClass::Anuswara && !anuswara_.empty()) return &anuswara_;
  if (cls == CharClass::Visarga && !visarga_.empty()) return &visarga_;
  return nullptr;
}

std::vector<std::string> GraphemeToPhonemes(std::string_view token,
                                            const PhoneTable& phones,
                                            const ScriptTable& script) {
  std::string_view body = token;
  if (!body.empty() && body.back() == kJoinMarker) body.remove_suffix(1);
  const std::u32string cps = DecodeUtf8(body);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    const CharClass cls = script.Classify(cp);
    if (cls == CharClass::Virama) continue;
    const std::vector<std::string>* p = phones.Lookup(cp);
    if (!p) p = phones.ClassDefault(cls);
    if (!p) throw UnmappedCodepointError(std::string(token), cp);
    out.insert(out.end(), p->begin(), p->end());
    if (cls == CharClass::Consonant) {
      const CharClass next =
          i + 1 < cps.size() ? script.Classify(cps[i + 1]) : CharClass::NonMalayalam;
      if (next != CharClass::Virama && next != CharClass::VowelSign) {
        out.insert(out.end(), phones.InherentVowel().begin(),
                   phones.InherentVowel().end());
      }
    }
  }
  return out;
}

namespace {

void RecordSkip(LexiconBuildReport* report, const std::string& token,
                const std::string& reason) {
  if (report) report->skipped.emplace_back(token, reason);
}

}  // namespace

Lexicon BuildWordLexicon(const std::vector<std::string>& base_words,
                         const FrequencyTable& corpus_freqs,
                         std::optional<std::uint64_t> min_count,
                         const PhoneTable& phones, const ScriptTable& script,
                         LexiconBuildReport* report) {
  if (base_words.empty()) throw EmptyBaseError();
  Lexicon lex;
  lex.kind = LexiconKind::Word;
  lex.source_threshold = min_count;
  std::vector<std::string> candidates = base_words;
  if (min_count) {
    for (const auto& [word, count] : corpus_freqs.counts) {
      if (count >= *min_count) candidates.push_back(word);
    }
  }
  for (const std::string& raw : candidates) {
    try {
      std::string key = EncodeUtf8(NormalizeWord(DecodeUtf8(raw), script, nullptr));
      if (key.empty()) {
        RecordSkip(report, raw, "empty after normalization");
        continue;
      }
      if (lex.entries.count(key)) continue;
      std::vector<std::string> ph = GraphemeToPhonemes(key, phones, script);
      if (ph.empty()) {
        RecordSkip(report, raw, "empty phone sequence");
        continue;
      }
      lex.entries.emplace(std::move(key), std::move(ph));
    } catch (const Error& e) {
      RecordSkip(report, raw, e.what());
    }
  }
  return lex;
}

Lexicon DeriveSyllableLexicon(const Lexicon& word_lexicon,
                              const Syllabifier& syllabifier,
                              const PhoneTable& phones,
                              LexiconBuildReport* report) {
  if (word_lexicon.kind != LexiconKind::Word)
    throw ConfigError("syllable lexicon derivation requires a word lexicon");
  Lexicon lex;
  lex.kind = LexiconKind::Syllable;
  lex.source_threshold = word_lexicon.source_threshold;
  for (const auto& [word, word_phones] : word_lexicon.entries) {
    (void)word_phones;
    try {
      for (const std::string& token : syllabifier.TokenizeWord(word)) {
        if (lex.entries.count(token)) continue;
        std::vector<std::string> ph =
            GraphemeToPhonemes(token, phones, syllabifier.table());
        if (ph.empty()) {
          RecordSkip(report, token, "empty phone sequence");
          continue;
        }
        lex.entries.emplace(token, std::move(ph));
      }
    } catch (const Error& e) {
      RecordSkip(report, word, e.what());
    }
  }
  return lex;
}

ConsistencyReport VerifyPronunciationConsistency(
    const Lexicon& word_lexicon, const Lexicon& syllable_lexicon,
    const Syllabifier& syllabifier) {
  ConsistencyReport rep;
  for (const auto& [word, word_phones] : word_lexicon.entries) {
    ++rep.words_checked;
    std::vector<std::string> tokens;
    try {
      tokens = syllabifier.TokenizeWord(word);
    } catch (const Error& e) {
      rep.violations.emplace_back(word, e.what());
      continue;
    }
    std::vector<std::string> concat;
    bool complete = true;
    for (const std::string& token : tokens) {
      auto it = syllable_lexicon.entries.find(token);
      if (it == syllable_lexicon.entries.end()) {
        rep.violations.emplace_back(word,
                                    "missing syllable token '" + token + "'");
        complete = false;
        break;
      }
      concat.insert(concat.end(), it->second.begin(), it->second.end());
    }
    if (!complete) continue;
    if (concat != word_phones) {
      rep.violations.emplace_back(
          word, "word phones '" + JoinTokens(word_phones) +
                    "' != syllable phones '" + JoinTokens(concat) + "'");
    }
  }
  return rep;
}

void WriteLexicon(const Lexicon& lexicon, std::ostream& out) {
  for (const auto& [token, phones] : lexicon.entries)
    out << token << '\t' << JoinTokens(phones) << '\n';
}

void WriteLexiconFile(const Lexicon& lexicon, const std::string& path) {
  std::ofstream out = OpenOutputFile(path);
  WriteLexicon(lexicon, out);
}

Lexicon ReadLexicon(std::istream& in, const std::string& origin,
                    LexiconKind kind) {
  Lexicon lex;
  lex.kind = kind;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw MalformedLineError(origin, line_no, "expected token<TAB>phones");
    std::string token = line.substr(0, tab);
    if (token.empty())
      throw MalformedLineError(origin, line_no, "empty token");
    if (kind == LexiconKind::Word && token.back() == kJoinMarker)
      throw MalformedLineError(origin, line_no,
                               "join-marked token in a word lexicon");
    std::vector<std::string> ph = SplitTokens(
        std::string_view(line).substr(tab + 1));
    if (ph.empty())
      throw MalformedLineError(origin, line_no, "empty phone list");
    if (!lex.entries.emplace(std::move(token), std::move(ph)).second)
      throw DuplicateTokenError(origin, line_no, line.substr(0, tab));
  }
  return lex;
}

Lexicon ReadLexiconFile(const std::string& path, LexiconKind kind) {
  std::ifstream in = OpenInputFile(path);
  return ReadLexicon(in, path, kind);
}

}  // namespace mlsyl
