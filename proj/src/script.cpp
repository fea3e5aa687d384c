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

#include "mlsyl/script.hpp"

#include <cstdio>

#include "mlsyl/default_tables.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/utf8.hpp"
#include "table_io.hpp"

namespace mlsyl {

namespace {

constexpr char32_t kZwnj = 0x200C;
constexpr char32_t kZwj = 0x200D;
constexpr char32_t kVirama = 0x0D4D;

// Consonants with an atomic chillu form (Unicode 5.1).
char32_t AtomicChilluFor(char32_t consonant) {
  switch (consonant) {
    case 0x0D23: return 0x0D7A;  // nna
    case 0x0D28: return 0x0D7B;  // na
    case 0x0D30: return 0x0D7C;  // rr
    case 0x0D32: return 0x0D7D;  // l
    case 0x0D33: return 0x0D7E;  // ll
    case 0x0D15: return 0x0D7F;  // k
    case 0x0D2E: return 0x0D54;  // m
    case 0x0D2F: return 0x0D55;  // y
    case 0x0D34: return 0x0D56;  // lll
    default: return 0;
  }
}

bool ParseClassName(std::string_view name, CharClass* out) {
  if (name == "Vowel") *out = CharClass::Vowel;
  else if (name == "VowelSign") *out = CharClass::VowelSign;
  else if (name == "Consonant") *out = CharClass::Consonant;
  else if (name == "Anuswara") *out = CharClass::Anuswara;
  else if (name == "Visarga") *out = CharClass::Visarga;
  else if (name == "Chillu") *out = CharClass::Chillu;
  else if (name == "Virama") *out = CharClass::Virama;
  else if (name == "NonMalayalam") *out = CharClass::NonMalayalam;
  else return false;
  return true;
}

bool IsSpace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v';
}

}  // namespace

std::string UnmappedCodepointError::HexCode(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04X", static_cast<unsigned>(cp));
  return buf;
}

const char* CharClassName(CharClass c) {
  switch (c) {
    case CharClass::Vowel: return "Vowel";
    case CharClass::VowelSign: return "VowelSign";
    case CharClass::Consonant: return "Consonant";
    case CharClass::Anuswara: return "Anuswara";
    case CharClass::Visarga: return "Visarga";
    case CharClass::Chillu: return "Chillu";
    case CharClass::Virama: return "Virama";
    case CharClass::NonMalayalam: return "NonMalayalam";
  }
  return "NonMalayalam";
}

const ScriptTable& ScriptTable::Builtin() {
  static const ScriptTable table =
      FromText(detail::kDefaultCharTable, "<builtin char table>");
  return table;
}

ScriptTable ScriptTable::FromFile(const std::string& path) {
  return FromText(detail::ReadFileText(path, "character table"), path);
}

ScriptTable ScriptTable::FromText(std::string_view text,
                                  const std::string& origin) {
  ScriptTable table;
  detail::ForEachTableRow(
      text, origin,
      [&](std::size_t line_no, std::string_view code, std::string_view name) {
        char32_t cp;
        if (!detail::ParseCodepointLiteral(code, &cp))
          throw MalformedLineError(origin, line_no, "bad codepoint literal");
        CharClass cls;
        if (!ParseClassName(name, &cls))
          throw MalformedLineError(origin, line_no,
                                   "unknown class '" + std::string(name) + "'");
        table.classes_[cp] = cls;
      });
  return table;
}

CharClass ScriptTable::Classify(char32_t cp) const {
  auto it = classes_.find(cp);
  return it == classes_.end() ? CharClass::NonMalayalam : it->second;
}

bool ScriptTable::IsMalayalamWord(std::u32string_view word) const {
  if (word.empty()) return false;
  for (char32_t cp : word) {
    if (Classify(cp) == CharClass::NonMalayalam) return false;
  }
  return true;
}

bool ScriptTable::IsMalayalamWord(std::string_view utf8_word) const {
  if (!IsValidUtf8(utf8_word)) return false;
  return IsMalayalamWord(DecodeUtf8(utf8_word));
}

std::string NormalizedText::Utf8() const { return EncodeUtf8(codepoints); }

std::u32string NormalizeWord(std::u32string_view word,
                             const ScriptTable& table, WordFlags* flags) {
  std::u32string out;
  out.reserve(word.size());
  // Pass 1: rewrite legacy chillus, drop remaining zero-width characters.
  for (std::size_t i = 0; i < word.size();) {
    char32_t cp = word[i];
    if (table.Classify(cp) == CharClass::Consonant && i + 2 < word.size() &&
        word[i + 1] == kVirama && word[i + 2] == kZwj) {
      char32_t chillu = AtomicChilluFor(cp);
      if (chillu != 0) {
        out.push_back(chillu);
        if (flags) flags->had_legacy_chillu = true;
        i += 3;
        continue;
      }
    }
    if (cp == kZwj || cp == kZwnj) {
      if (flags) flags->had_zero_width_chars = true;
      ++i;
      continue;
    }
    out.push_back(cp);
    ++i;
  }
  // Pass 2: compose the two-part vowel signs.
  std::u32string composed;
  composed.reserve(out.size());
  for (std::size_t i = 0; i < out.size();) {
    if (i + 1 < out.size()) {
      char32_t a = out[i], b = out[i + 1];
      char32_t joined = 0;
      if (a == 0x0D46 && b == 0x0D3E) joined = 0x0D4A;
      else if (a == 0x0D47 && b == 0x0D3E) joined = 0x0D4B;
      else if (a == 0x0D46 && b == 0x0D57) joined = 0x0D4C;
      if (joined != 0) {
        composed.push_back(joined);
        i += 2;
        continue;
      }
    }
    composed.push_back(out[i]);
    ++i;
  }
  if (flags) {
    for (char32_t cp : composed) {
      if (table.Classify(cp) == CharClass::NonMalayalam) {
        flags->contains_non_malayalam = true;
        break;
      }
    }
  }
  return composed;
}

NormalizedText Normalize(std::string_view utf8, const ScriptTable& table) {
  std::u32string raw = DecodeUtf8(utf8);
  NormalizedText result;
  result.codepoints.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (IsSpace(raw[i])) {
      result.codepoints.push_back(raw[i]);
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < raw.size() && !IsSpace(raw[i])) ++i;
    WordFlags flags;
    std::u32string norm = NormalizeWord(
        std::u32string_view(raw).substr(start, i - start), table, &flags);
    result.codepoints.append(norm);
    result.word_flags.push_back(flags);
  }
  return result;
}

}  // namespace mlsyl
