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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/evaluate.hpp"
#include "mlsyl/lexicon.hpp"
#include "mlsyl/ngram.hpp"
#include "mlsyl/script.hpp"
#include "mlsyl/simulate.hpp"
#include "mlsyl/syllabify.hpp"
#include "mlsyl/utf8.hpp"

namespace py = pybind11;

namespace {

using namespace mlsyl;

using Entries = std::map<std::string, std::vector<std::string>>;

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string s;
  for (const std::string& l : lines) {
    s += l;
    s += '\n';
  }
  return s;
}

Lexicon MakeLexicon(const Entries& entries, LexiconKind kind) {
  Lexicon lex;
  lex.kind = kind;
  lex.entries = entries;
  return lex;
}

NgramModel TrainModel(const std::vector<std::string>& lines, int order,
                      const std::string& smoothing) {
  std::istringstream in(JoinLines(lines));
  const CountTable counts = CountNgrams(in, order);
  return EstimateModel(counts,
                       EstimateOptions{Smoothing::Parse(smoothing), {}});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Malayalam syllable-subword tokenization: syllabification with join "
      "markers, pronunciation lexicons, backoff n-gram models, and "
      "OOV/WER evaluation.";

  py::register_exception<Error>(m, "MlsylError");

  m.def(
      "normalize",
      [](const std::string& text) { return Normalize(text).Utf8(); },
      py::arg("text"),
      "Normalize Malayalam text: legacy chillu forms, joiner removal, "
      "two-part vowel signs.");

  m.def(
      "syllabify",
      [](const std::string& word) {
        const Syllabifier syl;
        WordFlags flags;
        const std::u32string normalized =
            NormalizeWord(DecodeUtf8(word), syl.table(), &flags);
        std::vector<std::tuple<std::string, std::string, bool>> out;
        for (const Syllable& s : syl.Syllabify(normalized))
          out.emplace_back(s.Utf8(), SyllableTypeName(s.type), s.joins_next);
        return out;
      },
      py::arg("word"),
      "Syllables of one word as (text, type, joins_next) tuples.");

  m.def(
      "tokenize_word",
      [](const std::string& word) {
        return Syllabifier().TokenizeWord(word);
      },
      py::arg("word"), "Marker-annotated syllable tokens of one word.");

  m.def(
      "tokenize_sentence",
      [](const std::string& sentence) {
        return Syllabifier().TokenizeSentence(sentence, nullptr);
      },
      py::arg("sentence"),
      "Marker-annotated syllable tokens of a whitespace-separated "
      "sentence; unsegmentable words pass through.");

  m.def(
      "detokenize",
      [](const std::vector<std::string>& tokens) {  //
        return Detokenize(tokens);
      },
      py::arg("tokens"), "Rebuild the sentence from marker-annotated tokens.");

  m.def(
      "grapheme_to_phonemes",
      [](const std::string& token) { return GraphemeToPhonemes(token); },
      py::arg("token"),
      "Phone sequence of a word or syllable token ('+' marker ignored).");

  m.def(
      "build_word_lexicon",
      [](const std::vector<std::string>& base_words,
         const std::map<std::string, std::uint64_t>& corpus_freqs,
         std::optional<std::uint64_t> min_count) {
        FrequencyTable freq;
        for (const auto& [token, count] : corpus_freqs)
          freq.Add(token, count);
        return BuildWordLexicon(base_words, freq, min_count).entries;
      },
      py::arg("base_words"),
      py::arg("corpus_freqs") = std::map<std::string, std::uint64_t>{},
      py::arg("min_count") = std::nullopt,
      "Word pronunciation lexicon: base words plus corpus words meeting "
      "min_count, as a token -> phones dict.");

  m.def(
      "derive_syllable_lexicon",
      [](const Entries& word_lexicon) {
        return DeriveSyllableLexicon(MakeLexicon(word_lexicon,
                                                 LexiconKind::Word),
                                     Syllabifier())
            .entries;
      },
      py::arg("word_lexicon"),
      "Unique syllable tokens of every lexicon word, with phones.");

  m.def(
      "verify_consistency",
      [](const Entries& word_lexicon, const Entries& syllable_lexicon) {
        return VerifyPronunciationConsistency(
                   MakeLexicon(word_lexicon, LexiconKind::Word),
                   MakeLexicon(syllable_lexicon, LexiconKind::Syllable),
                   Syllabifier())
            .violations;
      },
      py::arg("word_lexicon"), py::arg("syllable_lexicon"),
      "Words whose concatenated syllable phones differ from their own, as "
      "(word, detail) pairs; empty means consistent.");

  py::class_<NgramModel>(m, "NgramModel")
      .def_property_readonly("order", &NgramModel::order)
      .def_property_readonly("vocabulary_size", &NgramModel::VocabularySize)
      .def("in_vocabulary", &NgramModel::InVocabulary, py::arg("token"))
      .def("conditional_logprob", &NgramModel::ConditionalLogProb,
           py::arg("context"), py::arg("token"),
           "log10 P(token | context), with backoff.")
      .def("sentence_logprob", &NgramModel::SentenceLogProb,
           py::arg("tokens"),
           "log10 probability of the sentence, including </s>.")
      .def(
          "perplexity",
          [](const NgramModel& model, const std::vector<std::string>& lines) {
            std::istringstream in(JoinLines(lines));
            return CorpusPerplexity(model, in);
          },
          py::arg("lines"))
      .def("to_arpa", [](const NgramModel& model) { return ArpaString(model); });

  m.def("train_model", &TrainModel, py::arg("lines"), py::arg("order"),
        py::arg("smoothing") = "witten_bell",
        "Backoff n-gram model over tokenized lines; smoothing is "
        "witten_bell or add_k:K.");

  m.def(
      "load_arpa",
      [](const std::string& text) {
        std::istringstream in(text);
        return ReadArpa(in);
      },
      py::arg("text"), "Parse an ARPA model from text.");

  py::class_<PerplexityReport>(m, "PerplexityReport")
      .def_readonly("logprob10", &PerplexityReport::logprob10)
      .def_readonly("predictions", &PerplexityReport::predictions)
      .def_readonly("sentences", &PerplexityReport::sentences)
      .def_readonly("oov_tokens", &PerplexityReport::oov_tokens)
      .def_property_readonly("perplexity", &PerplexityReport::Perplexity);

  py::class_<WerReport>(m, "WerReport")
      .def_readonly("insertions", &WerReport::insertions)
      .def_readonly("deletions", &WerReport::deletions)
      .def_readonly("substitutions", &WerReport::substitutions)
      .def_readonly("matches", &WerReport::matches)
      .def_readonly("reference_words", &WerReport::reference_words)
      .def_property_readonly("wer", &WerReport::Wer);

  m.def(
      "score",
      [](const std::vector<std::string>& reference_lines,
         const std::vector<std::string>& hypothesis_lines, bool subword) {
        return ScoreCorpus(reference_lines, hypothesis_lines, subword);
      },
      py::arg("reference_lines"), py::arg("hypothesis_lines"),
      py::arg("subword") = false,
      "Corpus WER; with subword=True hypothesis lines are syllable tokens "
      "and are detokenized first.");

  py::class_<OovReport>(m, "OovReport")
      .def_readonly("type_based", &OovReport::type_based)
      .def_readonly("lexicon_size", &OovReport::lexicon_size)
      .def_readonly("test_tokens", &OovReport::test_tokens)
      .def_readonly("oov_tokens", &OovReport::oov_tokens)
      .def_property_readonly("rate", &OovReport::Rate);

  m.def(
      "oov_rate",
      [](const Entries& lexicon, const std::vector<std::string>& test_lines,
         const std::string& unit, bool types) {
        const bool syllable_unit = unit == "syllable";
        if (!syllable_unit && unit != "word")
          throw ConfigError("unit must be word or syllable");
        std::istringstream in(JoinLines(test_lines));
        return OovRate(MakeLexicon(lexicon, syllable_unit
                                                ? LexiconKind::Syllable
                                                : LexiconKind::Word),
                       in,
                       syllable_unit ? OovUnit::SyllableToken : OovUnit::Word,
                       types);
      },
      py::arg("lexicon"), py::arg("test_lines"), py::arg("unit") = "word",
      py::arg("types") = false,
      "OOV rate of test lines against a lexicon, counting words or "
      "syllable tokens.");

  m.def(
      "frequency_profile",
      [](const std::vector<std::string>& lines) {
        std::istringstream in(JoinLines(lines));
        std::vector<std::tuple<std::uint64_t, std::string, std::uint64_t,
                               double>>
            out;
        for (const ProfileRow& row : FrequencyProfile(in))
          out.emplace_back(row.rank, row.token, row.count,
                           row.cumulative_coverage);
        return out;
      },
      py::arg("lines"),
      "Rank/frequency rows (rank, token, count, cumulative_coverage).");

  py::class_<MeanLengthReport>(m, "MeanLengthReport")
      .def_readonly("mean_syllables", &MeanLengthReport::mean_syllables)
      .def_readonly("words_measured", &MeanLengthReport::words_measured)
      .def_readonly("words_skipped", &MeanLengthReport::words_skipped);

  m.def(
      "mean_word_length",
      [](const std::vector<std::string>& lines) {
        std::istringstream in(JoinLines(lines));
        return MeanWordLengthSyllables(in);
      },
      py::arg("lines"), "Mean word length in syllables over the text.");

  m.def(
      "dedup",
      [](const std::vector<std::string>& corpus_lines,
         const std::vector<std::string>& test_lines) {
        DedupResult result = DedupCorpus(corpus_lines, test_lines);
        return py::make_tuple(result.kept_lines, result.removed);
      },
      py::arg("corpus_lines"), py::arg("test_lines"),
      "Corpus lines with test sentences removed, plus the removal count.");

  m.def(
      "simulate_errors",
      [](const std::vector<std::string>& lines, double substitution_rate,
         double deletion_rate, double insertion_rate, std::uint64_t seed,
         const std::vector<std::string>& vocabulary, bool preserve_markers) {
        SimulateOptions options;
        options.substitution_rate = substitution_rate;
        options.deletion_rate = deletion_rate;
        options.insertion_rate = insertion_rate;
        options.seed = seed;
        options.vocabulary = vocabulary;
        options.preserve_markers = preserve_markers;
        std::istringstream in(JoinLines(lines));
        std::ostringstream out;
        SimulateErrors(in, out, options);
        std::istringstream round(out.str());
        return ReadLines(round);
      },
      py::arg("lines"), py::arg("substitution_rate") = 0.0,
      py::arg("deletion_rate") = 0.0, py::arg("insertion_rate") = 0.0,
      py::arg("seed") = 0, py::arg("vocabulary") = std::vector<std::string>{},
      py::arg("preserve_markers") = false,
      "Reproducible token corruption; with a vocabulary, inputs outside it "
      "are always substituted.");
}
