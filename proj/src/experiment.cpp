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

#include "mlsyl/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"
#include "mlsyl/evaluate.hpp"
#include "mlsyl/lexicon.hpp"

namespace fs = std::filesystem;

namespace mlsyl {

namespace {

std::uint64_t Fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string HexHash(std::string_view content) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a(content)));
  return buf;
}

std::string_view TrimView(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseUint(std::string_view s, std::uint64_t* out) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  *out = v;
  return true;
}

std::vector<std::string> SplitCsv(std::string_view value) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    std::string_view piece =
        TrimView(value.substr(start, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - start));
    if (!piece.empty()) parts.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string FormatFraction(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string s;
  for (const std::string& l : lines) {
    s += l;
    s += '\n';
  }
  return s;
}

// Same-name artifacts have same content by construction, so existing files
// are reused as-is.
void WriteArtifact(const fs::path& path, std::string_view content) {
  if (fs::exists(path)) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write artifact: " + path.string());
  out << content;
}

template <typename T>
struct Outcome {
  std::optional<T> value;
  std::string error;

  bool ok() const { return value.has_value(); }
};

std::string ThresholdLabel(const std::optional<std::uint64_t>& t) {
  return t ? std::to_string(*t) : "none";
}

std::string SmoothingTag(const Smoothing& s) {
  std::string tag = s.Describe();
  std::replace(tag.begin(), tag.end(), ':', '-');
  return tag;
}

std::vector<std::string> TokenizeLines(const std::vector<std::string>& lines,
                                       TokenMode mode, const Syllabifier& syl,
                                       TokenizerDiagnostics* diag) {
  std::istringstream in(JoinLines(lines));
  std::ostringstream out;
  TokenizeCorpus(in, out, mode, syl, diag);
  std::istringstream round(out.str());
  return ReadLines(round);
}

}  // namespace

const char* TokenModeName(TokenMode mode) {
  return mode == TokenMode::Word ? "word" : "syllable";
}

void ExperimentConfig::Validate() const {
  auto need = [](const std::string& value, const char* key) {
    if (value.empty())
      throw ConfigError(std::string("missing required key '") + key + "'");
  };
  need(lm_corpus, "lm_corpus");
  need(train_transcripts, "train_transcripts");
  need(test_transcripts, "test_transcripts");
  need(out_dir, "out_dir");
  if (modes.empty())
    throw ConfigError("modes must include word and/or syllable");
  if (orders.empty()) throw ConfigError("orders must be non-empty");
  for (int o : orders) {
    if (o < 1) throw ConfigError("orders must be >= 1");
  }
  if (thresholds.empty()) throw ConfigError("thresholds must be non-empty");
  for (const auto& t : thresholds) {
    if (t && *t == 0) throw ConfigError("thresholds must be positive or none");
  }
  const fs::path out = fs::path(out_dir).lexically_normal();
  for (const std::string* p :
       {&lm_corpus, &train_transcripts, &test_transcripts, &hypothesis_word,
        &hypothesis_syllable}) {
    if (!p->empty() && fs::path(*p).lexically_normal() == out)
      throw ConfigError("out_dir must differ from input path '" + *p + "'");
  }
}

ExperimentConfig ParseExperimentConfigText(std::string_view text,
                                           const std::string& origin) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    line = TrimView(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(TrimView(line.substr(0, eq)));
    const std::string value(TrimView(line.substr(eq + 1)));
    auto fail = [&](const std::string& what) -> ConfigError {
      return ConfigError(origin + ":" + std::to_string(line_no) + ": " + what);
    };
    if (key == "lm_corpus") {
      cfg.lm_corpus = value;
    } else if (key == "train_transcripts") {
      cfg.train_transcripts = value;
    } else if (key == "test_transcripts") {
      cfg.test_transcripts = value;
    } else if (key == "hypothesis_word") {
      cfg.hypothesis_word = value;
    } else if (key == "hypothesis_syllable") {
      cfg.hypothesis_syllable = value;
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "modes") {
      cfg.modes.clear();
      for (const std::string& m : SplitCsv(value)) {
        if (m == "word") cfg.modes.push_back(TokenMode::Word);
        else if (m == "syllable") cfg.modes.push_back(TokenMode::Syllable);
        else throw fail("unknown mode '" + m + "'");
      }
    } else if (key == "orders") {
      cfg.orders.clear();
      for (const std::string& o : SplitCsv(value)) {
        std::uint64_t v;
        if (!ParseUint(o, &v) || v < 1)
          throw fail("bad order '" + o + "'");
        cfg.orders.push_back(static_cast<int>(v));
      }
    } else if (key == "thresholds") {
      cfg.thresholds.clear();
      for (const std::string& t : SplitCsv(value)) {
        if (t == "none") {
          cfg.thresholds.push_back(std::nullopt);
        } else {
          std::uint64_t v;
          if (!ParseUint(t, &v) || v == 0)
            throw fail("bad threshold '" + t + "' (positive integer or none)");
          cfg.thresholds.push_back(v);
        }
      }
    } else if (key == "smoothing") {
      cfg.smoothing = Smoothing::Parse(value);
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig ParseExperimentConfigFile(const std::string& path) {
  std::ifstream in = OpenInputFile(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseExperimentConfigText(buf.str(), path);
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const std::vector<std::string> lm_lines = ReadLinesFile(config.lm_corpus);
  const std::vector<std::string> train_lines =
      ReadLinesFile(config.train_transcripts);
  const std::vector<std::string> test_lines =
      ReadLinesFile(config.test_transcripts);
  std::optional<std::vector<std::string>> hyp_word, hyp_syllable;
  if (!config.hypothesis_word.empty())
    hyp_word = ReadLinesFile(config.hypothesis_word);
  if (!config.hypothesis_syllable.empty())
    hyp_syllable = ReadLinesFile(config.hypothesis_syllable);
  if (hyp_word && hyp_word->size() != test_lines.size())
    throw ConfigError("hypothesis_word line count differs from test set");
  if (hyp_syllable && hyp_syllable->size() != test_lines.size())
    throw ConfigError("hypothesis_syllable line count differs from test set");

  fs::create_directories(config.out_dir);
  const fs::path out_dir(config.out_dir);

  ExperimentReport report;

  // Test sentences leave the LM corpus before anything is counted.
  DedupResult dedup = DedupCorpus(lm_lines, test_lines);
  report.dedup_removed = dedup.removed;
  {
    const std::string content = JoinLines(dedup.kept_lines);
    const std::string name = "corpus-deduped-" + HexHash(content) + ".txt";
    WriteArtifact(out_dir / name, content);
    report.notes.push_back("deduped corpus: " + name + " (" +
                           std::to_string(dedup.removed) + " lines removed)");
  }

  const Syllabifier syl;
  const bool want_word = std::find(config.modes.begin(), config.modes.end(),
                                   TokenMode::Word) != config.modes.end();
  const bool want_syllable =
      std::find(config.modes.begin(), config.modes.end(),
                TokenMode::Syllable) != config.modes.end();

  // Word tokens are needed even in syllable-only runs: thresholds and the
  // word lexicons underlying syllable derivation count words.
  TokenizerDiagnostics word_diag;
  const std::vector<std::string> word_tokens =
      TokenizeLines(dedup.kept_lines, TokenMode::Word, syl, &word_diag);
  std::vector<std::string> syllable_tokens;
  if (want_syllable) {
    TokenizerDiagnostics diag;
    syllable_tokens =
        TokenizeLines(dedup.kept_lines, TokenMode::Syllable, syl, &diag);
    if (diag.words_unsegmentable > 0) {
      report.notes.push_back(
          "syllable tokenization passed through " +
          std::to_string(diag.words_unsegmentable) + " unsegmentable words");
    }
  }
  if (want_word) {
    const std::string content = JoinLines(word_tokens);
    WriteArtifact(out_dir / ("tokens-word-" + HexHash(content) + ".txt"),
                  content);
  }
  if (want_syllable) {
    const std::string content = JoinLines(syllable_tokens);
    WriteArtifact(out_dir / ("tokens-syllable-" + HexHash(content) + ".txt"),
                  content);
  }

  FrequencyTable freq;
  for (const std::string& line : word_tokens) freq.AddTokens(SplitTokens(line));

  std::vector<std::string> base_words;
  {
    TokenizerDiagnostics diag;
    for (const std::string& line :
         TokenizeLines(train_lines, TokenMode::Word, syl, &diag)) {
      for (std::string& w : SplitTokens(line)) base_words.push_back(std::move(w));
    }
  }

  // Lexicons per threshold, shared across orders and modes.
  std::map<std::string, Outcome<Lexicon>> word_lex, syllable_lex;
  std::map<std::string, std::string> word_lex_file, syllable_lex_file;
  for (const auto& threshold : config.thresholds) {
    const std::string label = ThresholdLabel(threshold);
    if (word_lex.count(label)) continue;
    Outcome<Lexicon> ow;
    try {
      LexiconBuildReport build_report;
      Lexicon lw = BuildWordLexicon(base_words, freq, threshold,
                                    PhoneTable::Builtin(), syl.table(),
                                    &build_report);
      std::ostringstream os;
      WriteLexicon(lw, os);
      const std::string name =
          "lexicon-word-" + label + "-" + HexHash(os.str()) + ".txt";
      WriteArtifact(out_dir / name, os.str());
      word_lex_file[label] = name;
      if (!build_report.skipped.empty()) {
        report.notes.push_back("lexicon-word-" + label + ": skipped " +
                               std::to_string(build_report.skipped.size()) +
                               " words");
      }
      ow.value = std::move(lw);
    } catch (const Error& e) {
      ow.error = e.what();
    }
    Outcome<Lexicon> osy;
    if (want_syllable) {
      if (ow.ok()) {
        try {
          LexiconBuildReport build_report;
          Lexicon ls = DeriveSyllableLexicon(*ow.value, syl,
                                             PhoneTable::Builtin(),
                                             &build_report);
          std::ostringstream os;
          WriteLexicon(ls, os);
          const std::string name =
              "lexicon-syllable-" + label + "-" + HexHash(os.str()) + ".txt";
          WriteArtifact(out_dir / name, os.str());
          syllable_lex_file[label] = name;
          if (!build_report.skipped.empty()) {
            report.notes.push_back(
                "lexicon-syllable-" + label + ": skipped " +
                std::to_string(build_report.skipped.size()) + " entries");
          }
          osy.value = std::move(ls);
        } catch (const Error& e) {
          osy.error = e.what();
        }
      } else {
        osy.error = ow.error;
      }
    }
    word_lex.emplace(label, std::move(ow));
    syllable_lex.emplace(label, std::move(osy));
  }

  // One model per (mode, order), shared across thresholds.
  struct ModelInfo {
    std::uint64_t grams = 0;
    std::uint64_t bytes = 0;
    std::string file;
  };
  std::map<std::pair<int, int>, Outcome<ModelInfo>> models;
  for (TokenMode mode : config.modes) {
    for (int order : config.orders) {
      const std::pair<int, int> key{static_cast<int>(mode), order};
      if (models.count(key)) continue;
      Outcome<ModelInfo> om;
      try {
        const std::vector<std::string>& token_lines =
            mode == TokenMode::Word ? word_tokens : syllable_tokens;
        CountTable counts(order);
        for (const std::string& line : token_lines)
          counts.AddSentence(SplitTokens(line));
        const NgramModel model =
            EstimateModel(counts, EstimateOptions{config.smoothing, {}});
        const std::string arpa = ArpaString(model);
        ModelInfo info;
        info.bytes = arpa.size();
        for (int k = 1; k <= model.order(); ++k)
          info.grams += model.Level(k).size();
        info.file = std::string("lm-") + TokenModeName(mode) + "-o" +
                    std::to_string(order) + "-" + SmoothingTag(config.smoothing) +
                    "-" + HexHash(arpa) + ".arpa";
        WriteArtifact(out_dir / info.file, arpa);
        om.value = std::move(info);
      } catch (const Error& e) {
        om.error = e.what();
      }
      models.emplace(key, std::move(om));
    }
  }

  // WER only when decoder output was supplied.
  std::optional<double> wer_word, wer_syllable;
  if (hyp_word) {
    try {
      wer_word = ScoreCorpus(test_lines, *hyp_word, false).Wer();
    } catch (const Error& e) {
      report.notes.push_back(std::string("word WER unavailable: ") + e.what());
    }
  }
  if (hyp_syllable) {
    try {
      wer_syllable = ScoreCorpus(test_lines, *hyp_syllable, true).Wer();
    } catch (const Error& e) {
      report.notes.push_back(std::string("syllable WER unavailable: ") +
                             e.what());
    }
  }

  std::map<std::pair<int, std::string>, Outcome<double>> oov_cache;
  auto oov_for = [&](TokenMode mode, const std::string& label,
                     const Lexicon& lexicon) -> const Outcome<double>& {
    const std::pair<int, std::string> key{static_cast<int>(mode), label};
    auto it = oov_cache.find(key);
    if (it != oov_cache.end()) return it->second;
    Outcome<double> o;
    try {
      std::istringstream in(JoinLines(test_lines));
      o.value = OovRate(lexicon, in,
                        mode == TokenMode::Word ? OovUnit::Word
                                                : OovUnit::SyllableToken,
                        false, syl)
                    .Rate();
    } catch (const Error& e) {
      o.error = e.what();
    }
    return oov_cache.emplace(key, std::move(o)).first->second;
  };

  for (TokenMode mode : config.modes) {
    for (const auto& threshold : config.thresholds) {
      const std::string label = ThresholdLabel(threshold);
      for (int order : config.orders) {
        ExperimentCell cell;
        cell.mode = mode;
        cell.threshold_label = label;
        cell.order = order;
        const auto& lex =
            (mode == TokenMode::Word ? word_lex : syllable_lex).at(label);
        const auto& om = models.at({static_cast<int>(mode), order});
        if (!lex.ok()) {
          cell.failed = true;
          cell.diagnostic = lex.error;
        } else if (!om.ok()) {
          cell.failed = true;
          cell.diagnostic = om.error;
        } else {
          const auto& oov = oov_for(mode, label, *lex.value);
          if (!oov.ok()) {
            cell.failed = true;
            cell.diagnostic = oov.error;
          } else {
            cell.lexicon_size = lex.value->size();
            cell.lexicon_file =
                (mode == TokenMode::Word ? word_lex_file
                                         : syllable_lex_file)[label];
            cell.model_grams = om.value->grams;
            cell.model_bytes = om.value->bytes;
            cell.model_file = om.value->file;
            cell.oov_rate = *oov.value;
            cell.wer = mode == TokenMode::Word ? wer_word : wer_syllable;
          }
        }
        if (cell.failed) ++report.failed_cells;
        report.cells.push_back(std::move(cell));
      }
    }
  }

  {
    std::ofstream out(out_dir / "report.tsv", std::ios::binary);
    out << RenderReport(report, ReportFormat::Tsv);
  }
  {
    std::ofstream out(out_dir / "report.md", std::ios::binary);
    out << RenderReport(report, ReportFormat::Markdown);
  }
  return report;
}

std::string RenderReport(const ExperimentReport& report, ReportFormat format) {
  static const char* kDash = "\xe2\x80\x94";  // em dash, the failed-cell mark
  const std::vector<std::string> header{
      "mode",        "threshold",   "order",      "lexicon_size",
      "lexicon_file", "model_grams", "model_bytes", "model_file",
      "oov_rate",    "wer"};
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footnotes;
  for (const ExperimentCell& c : report.cells) {
    std::vector<std::string> row(header.size());
    row[0] = TokenModeName(c.mode);
    row[1] = c.threshold_label;
    row[2] = std::to_string(c.order);
    if (c.failed) {
      for (std::size_t i = 3; i < row.size(); ++i) row[i] = kDash;
      footnotes.push_back("mode=" + row[0] + " threshold=" + row[1] +
                          " order=" + row[2] + ": " + c.diagnostic);
    } else {
      row[3] = std::to_string(c.lexicon_size);
      row[4] = c.lexicon_file;
      row[5] = std::to_string(c.model_grams);
      row[6] = std::to_string(c.model_bytes);
      row[7] = c.model_file;
      row[8] = FormatFraction(c.oov_rate);
      row[9] = c.wer ? FormatFraction(*c.wer) : kDash;
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream out;
  if (format == ReportFormat::Tsv) {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "\t" : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "\t" : "") << row[i];
      out << '\n';
    }
    out << "# dedup_removed\t" << report.dedup_removed << '\n';
    for (const std::string& n : report.notes) out << "# " << n << '\n';
    for (const std::string& f : footnotes) out << "# failed: " << f << '\n';
  } else {
    auto md_row = [&out](const std::vector<std::string>& cells) {
      out << '|';
      for (const std::string& c : cells) out << ' ' << c << " |";
      out << '\n';
    };
    md_row(header);
    out << '|';
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : rows) md_row(row);
    out << '\n';
    out << "Removed " << report.dedup_removed
        << " LM corpus lines matching test sentences.\n";
    if (!report.notes.empty()) {
      out << "\n## Notes\n\n";
      for (const std::string& n : report.notes) out << "- " << n << '\n';
    }
    if (!footnotes.empty()) {
      out << "\n## Failed cells\n\n";
      for (const std::string& f : footnotes) out << "- " << f << '\n';
    }
  }
  return out.str();
}

}  // namespace mlsyl
