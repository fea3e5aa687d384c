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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/evaluate.hpp"
#include "mlsyl/experiment.hpp"
#include "mlsyl/lexicon.hpp"
#include "mlsyl/ngram.hpp"
#include "mlsyl/script.hpp"
#include "mlsyl/simulate.hpp"
#include "mlsyl/syllabify.hpp"

namespace {

using namespace mlsyl;

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

ScriptTable LoadScriptTable(const std::string& path) {
  return path.empty() ? ScriptTable::Builtin() : ScriptTable::FromFile(path);
}

PhoneTable LoadPhoneTable(const std::string& path) {
  return path.empty() ? PhoneTable::Builtin() : PhoneTable::FromFile(path);
}

std::vector<std::string> WhitespaceTokens(const std::string& path) {
  std::vector<std::string> words;
  for (const std::string& line : ReadLinesFile(path)) {
    for (std::string& w : SplitTokens(line)) words.push_back(std::move(w));
  }
  return words;
}

// Normalized word frequencies, counted the same way tokenize --mode word
// writes its output.
FrequencyTable CountNormalizedWords(const std::string& path,
                                    const Syllabifier& syl) {
  std::ifstream in = OpenInputFile(path);
  std::ostringstream tokens;
  TokenizeCorpus(in, tokens, TokenMode::Word, syl, nullptr);
  FrequencyTable freq;
  std::istringstream round(tokens.str());
  for (const std::string& line : ReadLines(round))
    freq.AddTokens(SplitTokens(line));
  return freq;
}

void WriteSkipReport(const std::string& path, const LexiconBuildReport& rep) {
  if (path.empty()) return;
  std::ofstream out = OpenOutputFile(path);
  for (const auto& [token, reason] : rep.skipped)
    out << token << '\t' << reason << '\n';
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in = OpenInputFile(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// First tab-separated field per line, so plain token lists and lexicon
// files both work as vocabularies.
std::vector<std::string> ReadVocabulary(const std::string& path) {
  std::vector<std::string> vocab;
  for (const std::string& line : ReadLinesFile(path)) {
    std::string token = line.substr(0, line.find('\t'));
    if (!token.empty()) vocab.push_back(std::move(token));
  }
  return vocab;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Malayalam syllable-subword tokenization toolkit: rule-based "
      "syllabification with join markers, pronunciation lexicons, backoff "
      "n-gram language models, and OOV/WER evaluation for open-vocabulary "
      "ASR pipelines."};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- tokenize ----
  struct {
    std::string mode, in, out, diagnostics, char_table;
  } tok;
  auto* tokenize = app.add_subcommand(
      "tokenize", "Rewrite a text corpus as word or syllable tokens");
  tokenize->add_option("--mode", tok.mode, "Token unit")
      ->required()
      ->check(CLI::IsMember({"word", "syllable"}));
  tokenize->add_option("--in", tok.in, "Input text, one sentence per line")
      ->required();
  tokenize->add_option("--out", tok.out, "Output token stream")->required();
  tokenize->add_option("--diagnostics", tok.diagnostics,
                       "Write tokenizer diagnostics to this file");
  tokenize->add_option("--char-table", tok.char_table,
                       "Character class table (default: built-in)");
  tokenize->callback([&] {
    const ScriptTable table = LoadScriptTable(tok.char_table);
    const Syllabifier syl(table);
    std::ifstream in = OpenInputFile(tok.in);
    std::ofstream out = OpenOutputFile(tok.out);
    TokenizerDiagnostics diag;
    TokenizeCorpus(in, out,
                   tok.mode == "word" ? TokenMode::Word : TokenMode::Syllable,
                   syl, &diag);
    if (!tok.diagnostics.empty()) {
      std::ofstream d = OpenOutputFile(tok.diagnostics);
      diag.Print(d);
    }
  });

  // ---- lexicon ----
  auto* lexicon = app.add_subcommand("lexicon", "Pronunciation lexicons");
  lexicon->require_subcommand(1);

  struct {
    std::string base, corpus, out, report, char_table, phone_table;
    std::uint64_t min_count = 0;
  } lxb;
  auto* lex_build = lexicon->add_subcommand(
      "build", "Build a word lexicon from transcripts plus corpus frequencies");
  lex_build
      ->add_option("--base", lxb.base,
                   "Text whose unique words always enter the lexicon")
      ->required();
  auto* lxb_corpus = lex_build->add_option(
      "--corpus", lxb.corpus, "Corpus counted for the frequency threshold");
  lex_build
      ->add_option("--min-count", lxb.min_count,
                   "Admit corpus words with at least this count")
      ->needs(lxb_corpus);
  lex_build->add_option("--out", lxb.out, "Lexicon file to write")->required();
  lex_build->add_option("--report", lxb.report,
                        "Write skipped words and reasons to this file");
  lex_build->add_option("--char-table", lxb.char_table,
                        "Character class table (default: built-in)");
  lex_build->add_option("--phone-table", lxb.phone_table,
                        "Phone table (default: built-in)");
  auto* lxb_min = lex_build->get_option("--min-count");
  lex_build->callback([&] {
    const ScriptTable table = LoadScriptTable(lxb.char_table);
    const PhoneTable phones = LoadPhoneTable(lxb.phone_table);
    const Syllabifier syl(table);
    std::optional<std::uint64_t> min_count;
    if (lxb_min->count()) min_count = lxb.min_count;
    FrequencyTable freq;
    if (!lxb.corpus.empty()) freq = CountNormalizedWords(lxb.corpus, syl);
    LexiconBuildReport report;
    const Lexicon lex = BuildWordLexicon(WhitespaceTokens(lxb.base), freq,
                                         min_count, phones, table, &report);
    WriteLexiconFile(lex, lxb.out);
    WriteSkipReport(lxb.report, report);
    std::cout << "entries\t" << lex.size() << '\n'
              << "skipped\t" << report.skipped.size() << '\n';
  });

  struct {
    std::string in, out, report, char_table, phone_table;
  } lxd;
  auto* lex_derive = lexicon->add_subcommand(
      "derive", "Derive the syllable lexicon of a word lexicon");
  lex_derive->add_option("--in", lxd.in, "Word lexicon file")->required();
  lex_derive->add_option("--out", lxd.out, "Syllable lexicon file to write")
      ->required();
  lex_derive->add_option("--report", lxd.report,
                         "Write skipped entries and reasons to this file");
  lex_derive->add_option("--char-table", lxd.char_table,
                         "Character class table (default: built-in)");
  lex_derive->add_option("--phone-table", lxd.phone_table,
                         "Phone table (default: built-in)");
  lex_derive->callback([&] {
    const ScriptTable table = LoadScriptTable(lxd.char_table);
    const PhoneTable phones = LoadPhoneTable(lxd.phone_table);
    const Syllabifier syl(table);
    const Lexicon word_lex = ReadLexiconFile(lxd.in, LexiconKind::Word);
    LexiconBuildReport report;
    const Lexicon syl_lex = DeriveSyllableLexicon(word_lex, syl, phones,
                                                  &report);
    WriteLexiconFile(syl_lex, lxd.out);
    WriteSkipReport(lxd.report, report);
    std::cout << "entries\t" << syl_lex.size() << '\n'
              << "skipped\t" << report.skipped.size() << '\n';
  });

  struct {
    std::string word, syllable, char_table;
  } lxv;
  auto* lex_verify = lexicon->add_subcommand(
      "verify",
      "Check that syllable-phone concatenation reproduces every word's "
      "phones (exit 2 on violations)");
  lex_verify->add_option("--word", lxv.word, "Word lexicon file")->required();
  lex_verify->add_option("--syllable", lxv.syllable, "Syllable lexicon file")
      ->required();
  lex_verify->add_option("--char-table", lxv.char_table,
                         "Character class table (default: built-in)");
  lex_verify->callback([&] {
    const ScriptTable table = LoadScriptTable(lxv.char_table);
    const Syllabifier syl(table);
    const Lexicon word_lex = ReadLexiconFile(lxv.word, LexiconKind::Word);
    const Lexicon syl_lex =
        ReadLexiconFile(lxv.syllable, LexiconKind::Syllable);
    const ConsistencyReport report =
        VerifyPronunciationConsistency(word_lex, syl_lex, syl);
    std::cout << "words_checked\t" << report.words_checked << '\n'
              << "violations\t" << report.violations.size() << '\n';
    for (const auto& [word, detail] : report.violations)
      std::cout << "violation\t" << word << '\t' << detail << '\n';
    if (!report.violations.empty()) exit_code = 2;
  });

  // ---- lm ----
  auto* lm = app.add_subcommand("lm", "Backoff n-gram language models");
  lm->require_subcommand(1);

  struct {
    std::string smoothing = "witten_bell";
    std::string in, out;
    int order = 3;
  } lmt;
  auto* lm_train = lm->add_subcommand(
      "train", "Estimate a backoff model over a token stream, write ARPA");
  lm_train->add_option("--order", lmt.order, "Model order (n)")
      ->required()
      ->check(CLI::Range(1, 99));
  lm_train->add_option("--smoothing", lmt.smoothing,
                       "witten_bell or add_k:K (default witten_bell)");
  lm_train->add_option("--in", lmt.in, "Tokenized corpus")->required();
  lm_train->add_option("--out", lmt.out, "ARPA model file to write")
      ->required();
  lm_train->callback([&] {
    const Smoothing smoothing = Smoothing::Parse(lmt.smoothing);
    std::ifstream in = OpenInputFile(lmt.in);
    const CountTable counts = CountNgrams(in, lmt.order);
    const NgramModel model =
        EstimateModel(counts, EstimateOptions{smoothing, {}});
    WriteArpaFile(model, lmt.out);
    const ModelFootprint fp = ComputeFootprint(model);
    for (std::size_t k = 0; k < fp.grams_per_order.size(); ++k)
      std::cout << "ngram_" << (k + 1) << '\t' << fp.grams_per_order[k]
                << '\n';
    std::cout << "total_grams\t" << fp.TotalGrams() << '\n'
              << "arpa_bytes\t" << fp.serialized_bytes << '\n';
  });

  struct {
    std::string model, in;
  } lmp;
  auto* lm_ppl =
      lm->add_subcommand("ppl", "Perplexity of a token stream under a model");
  lm_ppl->add_option("--model", lmp.model, "ARPA model file")->required();
  lm_ppl->add_option("--in", lmp.in, "Tokenized corpus")->required();
  lm_ppl->callback([&] {
    const NgramModel model = ReadArpaFile(lmp.model);
    std::ifstream in = OpenInputFile(lmp.in);
    const PerplexityReport report = CorpusPerplexity(model, in);
    std::cout << "sentences\t" << report.sentences << '\n'
              << "predictions\t" << report.predictions << '\n'
              << "oov_tokens\t" << report.oov_tokens << '\n'
              << "logprob10\t" << Fixed6(report.logprob10) << '\n'
              << "perplexity\t" << Fixed6(report.Perplexity()) << '\n';
  });

  // ---- score ----
  struct {
    std::string ref, hyp;
    bool subword = false;
  } sc;
  auto* score = app.add_subcommand(
      "score", "Word error rate of a hypothesis against a reference");
  score->add_option("--ref", sc.ref, "Reference transcripts")->required();
  score->add_option("--hyp", sc.hyp, "Hypothesis transcripts")->required();
  score->add_flag("--subword", sc.subword,
                  "Hypothesis lines are syllable tokens; detokenize before "
                  "word-level alignment");
  score->callback([&] {
    const WerReport report = ScoreCorpus(ReadLinesFile(sc.ref),
                                         ReadLinesFile(sc.hyp), sc.subword);
    std::cout << "reference_words\t" << report.reference_words << '\n'
              << "matches\t" << report.matches << '\n'
              << "substitutions\t" << report.substitutions << '\n'
              << "deletions\t" << report.deletions << '\n'
              << "insertions\t" << report.insertions << '\n'
              << "wer\t" << Fixed6(report.Wer()) << '\n';
    char percent[32];
    std::snprintf(percent, sizeof(percent), "%.2f", report.Wer() * 100.0);
    std::cout << "wer_percent\t" << percent << '\n';
  });

  // ---- oov ----
  struct {
    std::string lexicon, test, unit, char_table;
    bool types = false;
  } ov;
  auto* oov = app.add_subcommand(
      "oov", "Out-of-vocabulary rate of a test text against a lexicon");
  oov->add_option("--lexicon", ov.lexicon, "Lexicon file")->required();
  oov->add_option("--test", ov.test, "Test text, one sentence per line")
      ->required();
  oov->add_option("--unit", ov.unit, "Counting unit")
      ->required()
      ->check(CLI::IsMember({"word", "syllable"}));
  oov->add_flag("--types", ov.types,
                "Count distinct types instead of occurrences");
  oov->add_option("--char-table", ov.char_table,
                  "Character class table (default: built-in)");
  oov->callback([&] {
    const ScriptTable table = LoadScriptTable(ov.char_table);
    const Syllabifier syl(table);
    const bool syllable_unit = ov.unit == "syllable";
    const Lexicon lex = ReadLexiconFile(
        ov.lexicon,
        syllable_unit ? LexiconKind::Syllable : LexiconKind::Word);
    std::ifstream in = OpenInputFile(ov.test);
    const OovReport report =
        OovRate(lex, in,
                syllable_unit ? OovUnit::SyllableToken : OovUnit::Word,
                ov.types, syl);
    std::cout << "unit\t" << ov.unit << '\n'
              << "counting\t" << (ov.types ? "types" : "tokens") << '\n'
              << "lexicon_size\t" << report.lexicon_size << '\n'
              << "test_tokens\t" << report.test_tokens << '\n'
              << "oov_tokens\t" << report.oov_tokens << '\n'
              << "oov_rate\t" << Fixed6(report.Rate()) << '\n';
  });

  // ---- profile ----
  struct {
    std::string in, out;
  } pf;
  auto* profile = app.add_subcommand(
      "profile", "Rank/frequency profile of a tokenized corpus");
  profile->add_option("--in", pf.in, "Tokenized corpus")->required();
  profile
      ->add_option("--out", pf.out,
                   "Series file: rank, token, count, cumulative_coverage")
      ->required();
  profile->callback([&] {
    std::ifstream in = OpenInputFile(pf.in);
    const std::vector<ProfileRow> rows = FrequencyProfile(in);
    std::ofstream out = OpenOutputFile(pf.out);
    WriteProfile(rows, out);
    std::cout << "types\t" << rows.size() << '\n';
  });

  // ---- dedup ----
  struct {
    std::string corpus, test, out, char_table;
  } dd;
  auto* dedup = app.add_subcommand(
      "dedup", "Remove corpus lines that match test sentences");
  dedup->add_option("--corpus", dd.corpus, "LM text corpus")->required();
  dedup->add_option("--test", dd.test, "Test transcripts")->required();
  dedup->add_option("--out", dd.out, "Filtered corpus to write")->required();
  dedup->add_option("--char-table", dd.char_table,
                    "Character class table (default: built-in)");
  dedup->callback([&] {
    const ScriptTable table = LoadScriptTable(dd.char_table);
    const DedupResult result =
        DedupCorpus(ReadLinesFile(dd.corpus), ReadLinesFile(dd.test), table);
    std::ofstream out = OpenOutputFile(dd.out);
    for (const std::string& line : result.kept_lines) out << line << '\n';
    std::cout << "kept\t" << result.kept_lines.size() << '\n'
              << "removed\t" << result.removed << '\n';
  });

  // ---- mean-length ----
  struct {
    std::string in, char_table;
  } ml;
  auto* mean_length = app.add_subcommand(
      "mean-length", "Mean word length in syllables over a text corpus");
  mean_length->add_option("--in", ml.in, "Text, one sentence per line")
      ->required();
  mean_length->add_option("--char-table", ml.char_table,
                          "Character class table (default: built-in)");
  mean_length->callback([&] {
    const ScriptTable table = LoadScriptTable(ml.char_table);
    const Syllabifier syl(table);
    std::ifstream in = OpenInputFile(ml.in);
    const MeanLengthReport report = MeanWordLengthSyllables(in, syl);
    std::cout << "words_measured\t" << report.words_measured << '\n'
              << "words_skipped\t" << report.words_skipped << '\n'
              << "mean_syllables\t" << Fixed6(report.mean_syllables) << '\n';
  });

  // ---- experiment ----
  auto* experiment =
      app.add_subcommand("experiment", "Grid runs over modes x thresholds x "
                                       "orders");
  experiment->require_subcommand(1);
  struct {
    std::string config, lm_corpus, train, test, hyp_word, hyp_syllable;
    std::string out_dir, modes, orders, thresholds, smoothing;
  } ex;
  auto* exp_run = experiment->add_subcommand(
      "run",
      "Run the full grid: dedup, tokenize, lexicons, models, reports. "
      "Flags override config-file keys.");
  exp_run->add_option("--config", ex.config, "key = value config file");
  exp_run->add_option("--lm-corpus", ex.lm_corpus, "LM text corpus");
  exp_run->add_option("--train-transcripts", ex.train, "Training transcripts");
  exp_run->add_option("--test-transcripts", ex.test, "Test transcripts");
  exp_run->add_option("--hypothesis-word", ex.hyp_word,
                      "Word hypothesis transcripts (optional)");
  exp_run->add_option("--hypothesis-syllable", ex.hyp_syllable,
                      "Syllable-token hypothesis stream (optional)");
  exp_run->add_option("--out-dir", ex.out_dir, "Artifact directory");
  exp_run->add_option("--modes", ex.modes, "Comma list of word,syllable");
  exp_run->add_option("--orders", ex.orders, "Comma list of n-gram orders");
  exp_run->add_option("--thresholds", ex.thresholds,
                      "Comma list of min-counts or none");
  exp_run->add_option("--smoothing", ex.smoothing,
                      "witten_bell or add_k:K");
  exp_run->callback([&] {
    std::string text;
    std::string origin = "<flags>";
    if (!ex.config.empty()) {
      text = ReadTextFile(ex.config);
      origin = ex.config;
    }
    auto append = [&text](const char* key, const std::string& value) {
      if (!value.empty()) {
        text += '\n';
        text += key;
        text += " = ";
        text += value;
      }
    };
    append("lm_corpus", ex.lm_corpus);
    append("train_transcripts", ex.train);
    append("test_transcripts", ex.test);
    append("hypothesis_word", ex.hyp_word);
    append("hypothesis_syllable", ex.hyp_syllable);
    append("out_dir", ex.out_dir);
    append("modes", ex.modes);
    append("orders", ex.orders);
    append("thresholds", ex.thresholds);
    append("smoothing", ex.smoothing);
    const ExperimentConfig config = ParseExperimentConfigText(text, origin);
    const ExperimentReport report = RunExperiment(config);
    std::cout << "cells\t" << report.cells.size() << '\n'
              << "failed_cells\t" << report.failed_cells << '\n'
              << "dedup_removed\t" << report.dedup_removed << '\n'
              << "report\t"
              << (std::string(config.out_dir) + "/report.tsv") << '\n';
    if (report.failed_cells > 0) exit_code = 3;
  });

  // ---- simulate-errors ----
  struct {
    std::string unit, in, out, vocab;
    double rate = 0.0, deletion_rate = 0.0, insertion_rate = 0.0;
    std::uint64_t seed = 0;
  } sim;
  auto* simulate = app.add_subcommand(
      "simulate-errors",
      "Corrupt a token stream reproducibly (decoder stand-in for WER "
      "harnesses)");
  simulate->add_option("--rate", sim.rate, "Substitution rate in [0,1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--unit", sim.unit, "Token unit of the stream")
      ->required()
      ->check(CLI::IsMember({"word", "syllable"}));
  simulate->add_option("--in", sim.in, "Token stream to corrupt")->required();
  simulate->add_option("--out", sim.out, "Corrupted stream to write")
      ->required();
  simulate->add_option("--seed", sim.seed, "RNG seed (default 0)");
  simulate->add_option("--deletion-rate", sim.deletion_rate,
                       "Deletion rate in [0,1] (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--insertion-rate", sim.insertion_rate,
                       "Insertion rate in [0,1] (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option(
      "--vocab", sim.vocab,
      "Closed vocabulary: out-of-vocabulary inputs are always substituted "
      "and replacements come from this file (token per line; lexicon files "
      "accepted)");
  simulate->callback([&] {
    SimulateOptions options;
    options.substitution_rate = sim.rate;
    options.deletion_rate = sim.deletion_rate;
    options.insertion_rate = sim.insertion_rate;
    options.seed = sim.seed;
    options.preserve_markers = sim.unit == "syllable";
    if (!sim.vocab.empty()) options.vocabulary = ReadVocabulary(sim.vocab);
    std::ifstream in = OpenInputFile(sim.in);
    std::ofstream out = OpenOutputFile(sim.out);
    SimulateStats stats;
    SimulateErrors(in, out, options, &stats);
    std::cout << "lines\t" << stats.lines << '\n'
              << "tokens_in\t" << stats.tokens_in << '\n'
              << "substituted\t" << stats.substituted << '\n'
              << "forced_substitutions\t" << stats.forced_substitutions
              << '\n'
              << "deleted\t" << stats.deleted << '\n'
              << "inserted\t" << stats.inserted << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
