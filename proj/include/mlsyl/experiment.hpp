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

#ifndef MLSYL_EXPERIMENT_HPP_
#define MLSYL_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlsyl/ngram.hpp"
#include "mlsyl/syllabify.hpp"

namespace mlsyl {

// Grid description for a full pipeline run: dedup, tokenization, lexicon
// construction at each threshold, LM training at each order, evaluation.
struct ExperimentConfig {
  std::string lm_corpus;
  std::string train_transcripts;
  std::string test_transcripts;
  std::string hypothesis_word;      // optional decoder output, word tokens
  std::string hypothesis_syllable;  // optional decoder output, syllable tokens
  std::vector<TokenMode> modes{TokenMode::Word, TokenMode::Syllable};
  std::vector<int> orders{2, 3, 4};
  // nullopt = base vocabulary only; N = base plus corpus words with count>=N.
  std::vector<std::optional<std::uint64_t>> thresholds{std::nullopt, 5, 4, 3};
  Smoothing smoothing;
  std::string out_dir;

  // Structural checks only (keys present, values sane, out_dir not an input
  // path); file readability is checked by RunExperiment.
  void Validate() const;
};

// Line-oriented `key = value` file; '#' comments. Unknown keys are errors.
ExperimentConfig ParseExperimentConfigText(std::string_view text,
                                           const std::string& origin);
ExperimentConfig ParseExperimentConfigFile(const std::string& path);

const char* TokenModeName(TokenMode mode);

struct ExperimentCell {
  TokenMode mode = TokenMode::Word;
  std::string threshold_label;  // "none" or the min count
  int order = 0;
  bool failed = false;
  std::string diagnostic;
  std::size_t lexicon_size = 0;
  std::string lexicon_file;
  std::uint64_t model_grams = 0;
  std::uint64_t model_bytes = 0;
  std::string model_file;
  double oov_rate = 0.0;
  std::optional<double> wer;
};

struct ExperimentReport {
  std::vector<ExperimentCell> cells;  // fixed (mode, threshold, order) order
  std::uint64_t dedup_removed = 0;
  std::uint64_t failed_cells = 0;
  std::vector<std::string> notes;
};

// Executes the grid, writing every artifact (deduped corpus, token streams,
// lexicons, ARPA models, report tables) under config.out_dir. Intermediate
// artifacts carry content hashes in their names and are reused when already
// present, so reruns are byte-identical and cheap. Per-cell errors mark the
// cell failed; configuration problems throw ConfigError before any work.
ExperimentReport RunExperiment(const ExperimentConfig& config);

enum class ReportFormat { Tsv, Markdown };

// Stable rendering; failed cells show an em dash with the diagnostic
// footnoted below the table.
std::string RenderReport(const ExperimentReport& report, ReportFormat format);

}  // namespace mlsyl

#endif  // MLSYL_EXPERIMENT_HPP_
