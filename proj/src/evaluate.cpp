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

#include "mlsyl/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/utf8.hpp"

namespace mlsyl {

Alignment Align(const std::vector<std::string>& reference,
                const std::vector<std::string>& hypothesis) {
  const std::size_t r = reference.size();
  const std::size_t h = hypothesis.size();
  std::vector<std::vector<std::uint32_t>> dp(r + 1,
                                             std::vector<std::uint32_t>(h + 1));
  for (std::size_t i = 0; i <= r; ++i) dp[i][0] = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= h; ++j) dp[0][j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = 1; j <= h; ++j) {
      const std::uint32_t sub =
          dp[i - 1][j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      const std::uint32_t del = dp[i - 1][j] + 1;
      const std::uint32_t ins = dp[i][j - 1] + 1;
      dp[i][j] = std::min(sub, std::min(del, ins));
    }
  }

  Alignment out;
  std::size_t i = r, j = h;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && reference[i - 1] == hypothesis[j - 1] &&
        dp[i][j] == dp[i - 1][j - 1]) {
      out.steps.push_back({EditOp::Match, reference[i - 1], hypothesis[j - 1]});
      ++out.matches;
      --i;
      --j;
    } else if (i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + 1 &&
               reference[i - 1] != hypothesis[j - 1]) {
      out.steps.push_back(
          {EditOp::Substitution, reference[i - 1], hypothesis[j - 1]});
      ++out.substitutions;
      --i;
      --j;
    } else if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
      out.steps.push_back({EditOp::Deletion, reference[i - 1], ""});
      ++out.deletions;
      --i;
    } else {
      out.steps.push_back({EditOp::Insertion, "", hypothesis[j - 1]});
      ++out.insertions;
      --j;
    }
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

WerReport Wer(const Alignment& alignment, std::uint64_t reference_words) {
  if (reference_words == 0) throw EmptyReferenceError();
  WerReport rep;
  rep.insertions = alignment.insertions;
  rep.deletions = alignment.deletions;
  rep.substitutions = alignment.substitutions;
  rep.matches = alignment.matches;
  rep.reference_words = reference_words;
  return rep;
}

namespace {

std::vector<std::string> NormalizedWords(const std::string& text) {
  return SplitTokens(Normalize(text).Utf8());
}

}  // namespace

WerReport ScoreSubwordHypothesis(
    const std::string& reference_text,
    const std::vector<std::string>& hypothesis_tokens) {
  const std::vector<std::string> ref = NormalizedWords(reference_text);
  DetokenizerDiagnostics diag;
  const std::vector<std::string> hyp =
      NormalizedWords(Detokenize(hypothesis_tokens, &diag));
  return Wer(Align(ref, hyp), ref.size());
}

WerReport ScoreCorpus(const std::vector<std::string>& reference_lines,
                      const std::vector<std::string>& hypothesis_lines,
                      bool subword_hypothesis) {
  if (reference_lines.size() != hypothesis_lines.size()) {
    throw Error("reference has " + std::to_string(reference_lines.size()) +
                " lines but hypothesis has " +
                std::to_string(hypothesis_lines.size()));
  }
  WerReport total;
  for (std::size_t i = 0; i < reference_lines.size(); ++i) {
    const std::vector<std::string> ref = NormalizedWords(reference_lines[i]);
    std::vector<std::string> hyp;
    if (subword_hypothesis) {
      DetokenizerDiagnostics diag;
      hyp = NormalizedWords(
          Detokenize(SplitTokens(hypothesis_lines[i]), &diag));
    } else {
      hyp = NormalizedWords(hypothesis_lines[i]);
    }
    const Alignment a = Align(ref, hyp);
    total.insertions += a.insertions;
    total.deletions += a.deletions;
    total.substitutions += a.substitutions;
    total.matches += a.matches;
    total.reference_words += ref.size();
  }
  if (total.reference_words == 0) throw EmptyReferenceError();
  return total;
}

OovReport OovRate(const Lexicon& lexicon, std::istream& test_corpus,
                  OovUnit unit, bool type_based,
                  const Syllabifier& syllabifier) {
  if ((lexicon.kind == LexiconKind::Syllable) !=
      (unit == OovUnit::SyllableToken))
    throw ConfigError("lexicon kind does not match the requested unit");
  OovReport rep;
  rep.unit = unit;
  rep.type_based = type_based;
  rep.lexicon_size = lexicon.size();
  std::unordered_set<std::string> seen_types;
  std::string line;
  while (std::getline(test_corpus, line)) {
    std::vector<std::string> tokens;
    if (unit == OovUnit::Word) {
      tokens = SplitTokens(Normalize(line, syllabifier.table()).Utf8());
    } else {
      tokens = syllabifier.TokenizeSentence(line, nullptr);
    }
    for (std::string& t : tokens) {
      if (type_based && !seen_types.insert(t).second) continue;
      ++rep.test_tokens;
      if (lexicon.entries.find(t) == lexicon.entries.end()) ++rep.oov_tokens;
    }
  }
  if (rep.test_tokens == 0) throw EmptyCorpusError();
  return rep;
}

std::vector<ProfileRow> FrequencyProfile(std::istream& corpus) {
  FrequencyTable freq;
  std::string line;
  while (std::getline(corpus, line)) freq.AddTokens(SplitTokens(line));
  if (freq.total == 0) throw EmptyCorpusError();
  std::vector<ProfileRow> rows;
  rows.reserve(freq.counts.size());
  std::uint64_t cumulative = 0;
  std::uint64_t rank = 0;
  for (const auto& [token, count] : freq.Ranked()) {
    cumulative += count;
    rows.push_back(ProfileRow{++rank, token, count,
                              static_cast<double>(cumulative) /
                                  static_cast<double>(freq.total)});
  }
  return rows;
}

void WriteProfile(const std::vector<ProfileRow>& rows, std::ostream& out) {
  char coverage[32];
  for (const ProfileRow& r : rows) {
    std::snprintf(coverage, sizeof(coverage), "%.6f", r.cumulative_coverage);
    out << r.rank << '\t' << r.token << '\t' << r.count << '\t' << coverage
        << '\n';
  }
}

MeanLengthReport MeanWordLengthSyllables(std::istream& corpus,
                                         const Syllabifier& syllabifier) {
  MeanLengthReport rep;
  std::uint64_t syllables = 0;
  std::string line;
  while (std::getline(corpus, line)) {
    NormalizedText norm;
    try {
      norm = Normalize(line, syllabifier.table());
    } catch (const InvalidEncodingError&) {
      ++rep.words_skipped;
      continue;
    }
    for (const std::string& word : SplitTokens(norm.Utf8())) {
      if (!syllabifier.table().IsMalayalamWord(word)) {
        ++rep.words_skipped;
        continue;
      }
      try {
        syllables += syllabifier.Syllabify(DecodeUtf8(word)).size();
        ++rep.words_measured;
      } catch (const UnsegmentableWordError&) {
        ++rep.words_skipped;
      }
    }
  }
  if (rep.words_measured == 0) throw NoTokenizableWordsError();
  rep.mean_syllables = static_cast<double>(syllables) /
                       static_cast<double>(rep.words_measured);
  return rep;
}

namespace {

std::string CanonicalLine(const std::string& line, const ScriptTable& table) {
  try {
    return JoinTokens(SplitTokens(Normalize(line, table).Utf8()));
  } catch (const InvalidEncodingError&) {
    return line;
  }
}

}  // namespace

DedupResult DedupCorpus(const std::vector<std::string>& corpus_lines,
                        const std::vector<std::string>& test_lines,
                        const ScriptTable& table) {
  std::unordered_set<std::string> test_canonical;
  test_canonical.reserve(test_lines.size());
  for (const std::string& line : test_lines)
    test_canonical.insert(CanonicalLine(line, table));
  DedupResult result;
  for (const std::string& line : corpus_lines) {
    if (test_canonical.count(CanonicalLine(line, table))) {
      ++result.removed;
    } else {
      result.kept_lines.push_back(line);
    }
  }
  return result;
}

}  // namespace mlsyl
