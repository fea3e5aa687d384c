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

#include <string>
#include <vector>

#include "doctest.h"
#include "mlsyl/errors.hpp"
#include "mlsyl/script.hpp"
#include "mlsyl/syllabify.hpp"
#include "mlsyl/utf8.hpp"

namespace mlsyl {
namespace {

TEST_CASE("classify: representative codepoints of every class") {
  const ScriptTable& t = ScriptTable::Builtin();
  CHECK(t.Classify(U'അ') == CharClass::Vowel);      // അ
  CHECK(t.Classify(U'ാ') == CharClass::VowelSign);  // ാ
  CHECK(t.Classify(U'ക') == CharClass::Consonant);  // ക
  CHECK(t.Classify(U'ം') == CharClass::Anuswara);
  CHECK(t.Classify(U'ഃ') == CharClass::Visarga);
  CHECK(t.Classify(U'ൻ') == CharClass::Chillu);     // ൻ
  CHECK(t.Classify(U'്') == CharClass::Virama);
  CHECK(t.Classify(U'A') == CharClass::NonMalayalam);
  CHECK(t.Classify(U'ൗ') == CharClass::VowelSign);  // length mark
}

TEST_CASE("classify: total and deterministic over a wide scalar range") {
  const ScriptTable& t = ScriptTable::Builtin();
  for (char32_t cp = 0; cp < 0x3000; ++cp) {
    CHECK(t.Classify(cp) == t.Classify(cp));
  }
  // Everything outside the loaded table is NonMalayalam, including the
  // blocks around the Malayalam one.
  CHECK(t.Classify(U'೿') == CharClass::NonMalayalam);
  CHECK(t.Classify(U'඀') == CharClass::NonMalayalam);
  CHECK(t.Classify(U'\U0001F600') == CharClass::NonMalayalam);
}

TEST_CASE("special consonant group is exactly anuswara, visarga, chillu") {
  CHECK(IsSpecialConsonant(CharClass::Anuswara));
  CHECK(IsSpecialConsonant(CharClass::Visarga));
  CHECK(IsSpecialConsonant(CharClass::Chillu));
  CHECK_FALSE(IsSpecialConsonant(CharClass::Vowel));
  CHECK_FALSE(IsSpecialConsonant(CharClass::VowelSign));
  CHECK_FALSE(IsSpecialConsonant(CharClass::Consonant));
  CHECK_FALSE(IsSpecialConsonant(CharClass::Virama));
  CHECK_FALSE(IsSpecialConsonant(CharClass::NonMalayalam));
}

TEST_CASE("table text parsing rejects bad rows") {
  CHECK_THROWS_AS(ScriptTable::FromText("U+ZZZZ\tVowel\n", "t"),
                  MalformedLineError);
  CHECK_THROWS_AS(ScriptTable::FromText("U+0D05\tNoSuchClass\n", "t"),
                  MalformedLineError);
  ScriptTable small = ScriptTable::FromText("U+0D05\tVowel\n", "t");
  CHECK(small.Classify(U'അ') == CharClass::Vowel);
  CHECK(small.Classify(U'ക') == CharClass::NonMalayalam);
}

TEST_CASE("normalize rewrites legacy chillu to the atomic codepoint") {
  // ന + virama + ZWJ is the legacy spelling of ൻ.
  const std::string legacy = EncodeUtf8(U"ന്‍");
  NormalizedText norm = Normalize(legacy);
  CHECK(norm.codepoints == U"ൻ");
  REQUIRE(norm.word_flags.size() == 1);
  CHECK(norm.word_flags[0].had_legacy_chillu);
  CHECK_FALSE(norm.word_flags[0].contains_non_malayalam);

  // Both spellings of the same word tokenize identically afterwards.
  Syllabifier syllabifier;
  const std::string atomic_word = EncodeUtf8(U"അവൻ");
  const std::string legacy_word = EncodeUtf8(U"അവന്‍");
  CHECK(syllabifier.TokenizeWord(legacy_word) ==
        syllabifier.TokenizeWord(atomic_word));
}

TEST_CASE("normalize strips zero width characters") {
  const std::string with_zwnj = EncodeUtf8(U"ക‌ല");
  NormalizedText norm = Normalize(with_zwnj);
  CHECK(norm.codepoints == U"കല");
  REQUIRE(norm.word_flags.size() == 1);
  CHECK(norm.word_flags[0].had_zero_width_chars);
  CHECK_FALSE(norm.word_flags[0].had_legacy_chillu);
}

TEST_CASE("normalize composes two part vowel signs") {
  // Spelled with explicit escapes: the decomposed input and the composed
  // output render identically.
  const char32_t ka = 0x0D15;
  CHECK(Normalize(EncodeUtf8(std::u32string{ka, 0x0D46, 0x0D3E})).codepoints ==
        std::u32string({ka, 0x0D4A}));
  CHECK(Normalize(EncodeUtf8(std::u32string{ka, 0x0D47, 0x0D3E})).codepoints ==
        std::u32string({ka, 0x0D4B}));
  CHECK(Normalize(EncodeUtf8(std::u32string{ka, 0x0D46, 0x0D57})).codepoints ==
        std::u32string({ka, 0x0D4C}));
}

TEST_CASE("normalize: canonical text is unchanged and unflagged") {
  const std::string canonical = "അവൻ വള";
  NormalizedText norm = Normalize(canonical);
  CHECK(norm.Utf8() == canonical);
  REQUIRE(norm.word_flags.size() == 2);
  for (const WordFlags& f : norm.word_flags) {
    CHECK_FALSE(f.had_legacy_chillu);
    CHECK_FALSE(f.had_zero_width_chars);
    CHECK_FALSE(f.contains_non_malayalam);
  }
}

TEST_CASE("normalize: non-Malayalam text passes through with a flag") {
  NormalizedText norm = Normalize("abc");
  CHECK(norm.Utf8() == "abc");
  REQUIRE(norm.word_flags.size() == 1);
  CHECK(norm.word_flags[0].contains_non_malayalam);
}

TEST_CASE("normalize is idempotent") {
  const std::vector<std::string> samples = {
      "അവൻ വള ഇടുകയില്ല",
      EncodeUtf8(U"ന്‍ കൊ"),
      EncodeUtf8(U"ക‌ല abc അം"),
      "",
      "  mixed   അത് spaces  ",
  };
  for (const std::string& s : samples) {
    const std::string once = Normalize(s).Utf8();
    CHECK(Normalize(once).Utf8() == once);
  }
}

TEST_CASE("normalize leaves no consonant+virama+ZWJ triple behind") {
  const std::string tricky = EncodeUtf8(
      U"അവന്‍ തന്‍റ");
  const std::u32string norm = Normalize(tricky).codepoints;
  const ScriptTable& t = ScriptTable::Builtin();
  for (std::size_t i = 0; i + 2 < norm.size(); ++i) {
    const bool triple = t.Classify(norm[i]) == CharClass::Consonant &&
                        norm[i + 1] == U'്' && norm[i + 2] == U'‍';
    CHECK_FALSE(triple);
  }
}

TEST_CASE("normalize rejects invalid UTF-8") {
  CHECK_THROWS_AS(Normalize("\xFF\xFE"), InvalidEncodingError);
  CHECK_THROWS_AS(Normalize(std::string("\xE0\xA4", 2)), InvalidEncodingError);
}

TEST_CASE("is_malayalam_word") {
  const ScriptTable& t = ScriptTable::Builtin();
  CHECK(t.IsMalayalamWord("അവൻ"));
  CHECK_FALSE(t.IsMalayalamWord(""));
  CHECK_FALSE(t.IsMalayalamWord("അവൻ123"));
  CHECK_FALSE(t.IsMalayalamWord("abc"));
  CHECK_FALSE(t.IsMalayalamWord("\xFF"));
}

}  // namespace
}  // namespace mlsyl
