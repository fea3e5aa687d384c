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
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/script.hpp"
#include "mlsyl/syllabify.hpp"
#include "mlsyl/utf8.hpp"

namespace mlsyl {
namespace {

std::vector<std::string> Texts(const std::vector<Syllable>& syllables) {
  std::vector<std::string> out;
  for (const Syllable& s : syllables) out.push_back(s.Utf8());
  return out;
}

// Codepoints of the builtin table, bucketed by class and sorted so that
// generated words are stable across runs and platforms.
struct ClassBuckets {
  std::vector<char32_t> vowels, signs, consonants, chillus, specials;

  static const ClassBuckets& Get() {
    static const ClassBuckets b = [] {
      ClassBuckets buckets;
      for (const auto& [cp, cls] : ScriptTable::Builtin().entries()) {
        switch (cls) {
          case CharClass::Vowel: buckets.vowels.push_back(cp); break;
          case CharClass::VowelSign: buckets.signs.push_back(cp); break;
          case CharClass::Consonant: buckets.consonants.push_back(cp); break;
          case CharClass::Anuswara:
          case CharClass::Visarga:
            buckets.specials.push_back(cp);
            break;
          case CharClass::Chillu:
            buckets.chillus.push_back(cp);
            buckets.specials.push_back(cp);
            break;
          default: break;
        }
      }
      auto sort = [](std::vector<char32_t>& v) {
        std::sort(v.begin(), v.end());
      };
      sort(buckets.vowels);
      sort(buckets.signs);
      sort(buckets.consonants);
      sort(buckets.chillus);
      sort(buckets.specials);
      return buckets;
    }();
    return b;
  }
};

template <typename T>
const T& Pick(std::mt19937& gen, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(gen)];
}

// A word assembled from the four syllable shapes. Every such word admits at
// least one segmentation, so the syllabifier must succeed on it.
std::u32string GrammarWord(std::mt19937& gen) {
  const ClassBuckets& b = ClassBuckets::Get();
  std::u32string word;
  std::uniform_int_distribution<int> coin(0, 1);
  const int syllables = std::uniform_int_distribution<int>(1, 5)(gen);
  for (int s = 0; s < syllables; ++s) {
    const bool last = s + 1 == syllables;
    if (s == 0 && coin(gen) == 0) {
      word.push_back(Pick(gen, b.vowels));
    } else if (last && coin(gen) == 0) {
      const int pairs = std::uniform_int_distribution<int>(1, 2)(gen);
      for (int p = 0; p < pairs; ++p) {
        word.push_back(Pick(gen, b.consonants));
        word.push_back(U'്');
      }
      return word;  // dead consonant cluster is always word final
    } else {
      const int conjunct = std::uniform_int_distribution<int>(0, 2)(gen);
      for (int c = 0; c < conjunct; ++c) {
        word.push_back(Pick(gen, b.consonants));
        word.push_back(U'്');
      }
      word.push_back(Pick(gen, b.consonants));
      if (coin(gen) == 0) word.push_back(Pick(gen, b.signs));
    }
    if (coin(gen) == 0) word.push_back(Pick(gen, b.specials));
  }
  return word;
}

TEST_CASE("syllabify: golden segmentations and types") {
  Syllabifier s;

  auto avan = s.Syllabify(U"അവൻ");
  REQUIRE(avan.size() == 2);
  CHECK(avan[0].Utf8() == "അ");
  CHECK(avan[0].type == SyllableType::Type1);
  CHECK(avan[0].joins_next);
  CHECK(avan[1].Utf8() == "വൻ");
  CHECK(avan[1].type == SyllableType::Type2);
  CHECK_FALSE(avan[1].joins_next);

  auto vala = s.Syllabify(U"വള");
  REQUIRE(vala.size() == 2);
  CHECK(Texts(vala) == std::vector<std::string>{"വ", "ള"});
  CHECK(vala[0].type == SyllableType::Type2);
  CHECK(vala[1].type == SyllableType::Type2);

  auto lla = s.Syllabify(U"ല്ല");
  REQUIRE(lla.size() == 1);
  CHECK(lla[0].Utf8() == "ല്ല");
  CHECK(lla[0].type == SyllableType::Type3);

  auto a = s.Syllabify(U"അ");
  REQUIRE(a.size() == 1);
  CHECK(a[0].type == SyllableType::Type1);
  CHECK_FALSE(a[0].joins_next);

  auto ath = s.Syllabify(U"അത്");
  REQUIRE(ath.size() == 2);
  CHECK(ath[0].Utf8() == "അ");
  CHECK(ath[0].type == SyllableType::Type1);
  CHECK(ath[1].Utf8() == "ത്");
  CHECK(ath[1].type == SyllableType::Type4);
}

TEST_CASE("tokenize_word: markers on all but the final syllable") {
  Syllabifier s;
  CHECK(s.TokenizeWord("അവൻ") == std::vector<std::string>{"അ+", "വൻ"});
  CHECK(s.TokenizeWord("ഇടുകയില്ല") ==
        std::vector<std::string>{"ഇ+", "ടു+", "ക+", "യി+", "ല്ല"});
  CHECK(s.TokenizeWord("അ") == std::vector<std::string>{"അ"});
  CHECK(s.TokenizeWord("hello") == std::vector<std::string>{"hello"});
}

TEST_CASE("tokenize_sentence: joined golden stream and pass-through") {
  Syllabifier s;
  std::vector<std::string> tokens =
      s.TokenizeSentence("അവൻ വള ഇടുകയില്ല");
  CHECK(JoinTokens(tokens) == "അ+ വൻ വ+ ള ഇ+ ടു+ ക+ യി+ ല്ല");

  CHECK(s.TokenizeSentence("").empty());
  CHECK(s.TokenizeSentence("അവൻ 42") ==
        std::vector<std::string>{"അ+", "വൻ", "42"});
}

TEST_CASE("tokenize_sentence: unsegmentable words pass through with diag") {
  Syllabifier s;
  TokenizerDiagnostics diag;
  // Word-initial vowel sign matches no syllable shape.
  const std::string bad = EncodeUtf8(U"ാക");
  std::vector<std::string> tokens = s.TokenizeSentence(bad + " അവൻ", &diag);
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0] == bad);
  CHECK(diag.words_total == 2);
  CHECK(diag.words_unsegmentable == 1);
  REQUIRE(diag.unsegmentable_samples.size() == 1);
  CHECK(diag.unsegmentable_samples[0].first == bad);
  CHECK(diag.unsegmentable_samples[0].second == 0);
}

TEST_CASE("syllabify: unsegmentable inputs throw with the failure offset") {
  Syllabifier s;
  CHECK_THROWS_AS(s.Syllabify(U"ാക"), UnsegmentableWordError);
  try {
    // ക then ൻ closes the first syllable; the stranded sign ി matches
    // nothing at offset 2.
    s.Syllabify(U"കൻി");
    FAIL("expected UnsegmentableWordError");
  } catch (const UnsegmentableWordError& e) {
    CHECK(e.codepoint_offset() == 2);
  }
}

TEST_CASE("detokenize: golden, round trip, dangling marker") {
  CHECK(Detokenize({"അ+", "വൻ", "വ+", "ള"}) == "അവൻ വള");

  DetokenizerDiagnostics diag;
  CHECK(Detokenize({"ക+"}, &diag) == "ക");
  CHECK(diag.dangling_markers == 1);

  CHECK(Detokenize({}) == "");
}

TEST_CASE("tokenize/detokenize round trip on grammar-generated words") {
  Syllabifier syl;
  std::mt19937 gen(20260814u);
  for (int i = 0; i < 500; ++i) {
    const std::u32string word = GrammarWord(gen);
    CAPTURE(EncodeUtf8(word));
    std::vector<Syllable> segs;
    REQUIRE_NOTHROW(segs = syl.Syllabify(word));
    REQUIRE_FALSE(segs.empty());

    // Exhaustive cover: concatenation reproduces the word.
    std::u32string cat;
    for (const Syllable& s : segs) cat += s.text;
    CHECK(cat == word);

    // Anchoring.
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (segs[k].type == SyllableType::Type1) CHECK(k == 0);
      if (segs[k].type == SyllableType::Type4) CHECK(k == segs.size() - 1);
      CHECK_FALSE(segs[k].text.empty());
      CHECK(segs[k].joins_next == (k + 1 < segs.size()));
    }

    // Special consonant closure: nothing follows a special inside a
    // syllable.
    const ScriptTable& t = ScriptTable::Builtin();
    for (const Syllable& s : segs) {
      for (std::size_t k = 0; k + 1 < s.text.size(); ++k) {
        CHECK_FALSE(IsSpecialConsonant(t.Classify(s.text[k])));
      }
    }

    // Marker soundness and round trip.
    std::vector<std::string> tokens = syl.TokenizeWord(EncodeUtf8(word));
    std::size_t unmarked = 0;
    for (const std::string& tok : tokens) {
      if (tok.back() != kJoinMarker) ++unmarked;
    }
    CHECK(unmarked == 1);
    CHECK(tokens.back().back() != kJoinMarker);
    CHECK(Detokenize(tokens) == EncodeUtf8(word));

    // Determinism.
    CHECK(Texts(syl.Syllabify(word)) == Texts(segs));
  }
}

TEST_CASE("syllabify: arbitrary codepoint soup either throws or covers") {
  Syllabifier syl;
  const ClassBuckets& b = ClassBuckets::Get();
  std::vector<char32_t> all;
  all.insert(all.end(), b.vowels.begin(), b.vowels.end());
  all.insert(all.end(), b.signs.begin(), b.signs.end());
  all.insert(all.end(), b.consonants.begin(), b.consonants.end());
  all.insert(all.end(), b.specials.begin(), b.specials.end());
  all.push_back(U'്');
  std::sort(all.begin(), all.end());

  std::mt19937 gen(97531u);
  for (int i = 0; i < 500; ++i) {
    std::u32string word;
    const int len = std::uniform_int_distribution<int>(1, 8)(gen);
    for (int k = 0; k < len; ++k) word.push_back(Pick(gen, all));
    CAPTURE(EncodeUtf8(word));
    try {
      std::vector<Syllable> segs = syl.Syllabify(word);
      std::u32string cat;
      for (const Syllable& s : segs) cat += s.text;
      CHECK(cat == word);
      for (std::size_t k = 0; k < segs.size(); ++k) {
        if (segs[k].type == SyllableType::Type1) CHECK(k == 0);
        if (segs[k].type == SyllableType::Type4) CHECK(k == segs.size() - 1);
      }
    } catch (const UnsegmentableWordError& e) {
      CHECK(e.codepoint_offset() < word.size());
    }
  }
}

TEST_CASE("tokenize_corpus: line counts, pass-through, encoding drops") {
  Syllabifier syl;

  SUBCASE("empty input stays empty") {
    std::istringstream in("");
    std::ostringstream out;
    TokenizeCorpus(in, out, TokenMode::Syllable, syl);
    CHECK(out.str().empty());
  }

  SUBCASE("syllable mode rewrites, word mode normalizes words") {
    std::istringstream in1("അവൻ വള ഇടുകയില്ല\n");
    std::ostringstream out1;
    TokenizeCorpus(in1, out1, TokenMode::Syllable, syl);
    CHECK(out1.str() == "അ+ വൻ വ+ ള ഇ+ ടു+ ക+ യി+ ല്ല\n");

    std::istringstream in2("  അവൻ   വള  \n");
    std::ostringstream out2;
    TokenizeCorpus(in2, out2, TokenMode::Word, syl);
    CHECK(out2.str() == "അവൻ വള\n");
  }

  SUBCASE("Latin-only lines pass through") {
    std::istringstream in("only latin text\n");
    std::ostringstream out;
    TokenizeCorpus(in, out, TokenMode::Syllable, syl);
    CHECK(out.str() == "only latin text\n");
  }

  SUBCASE("invalid encoding drops the line and counts it") {
    std::istringstream in("അവൻ\n\xFF\xFE\nവള\n");
    std::ostringstream out;
    TokenizerDiagnostics diag;
    TokenizeCorpus(in, out, TokenMode::Syllable, syl, &diag);
    CHECK(out.str() == "അ+ വൻ\nവ+ ള\n");
    CHECK(diag.lines_invalid_encoding == 1);
  }
}

}  // namespace
}  // namespace mlsyl
