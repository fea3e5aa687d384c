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

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mlsyl/errors.hpp"
#include "mlsyl/experiment.hpp"

namespace fs = std::filesystem;

namespace mlsyl {
namespace {

struct TempDir {
  fs::path path;

  TempDir() {
    std::mt19937_64 gen{std::random_device{}()};
    std::ostringstream name;
    name << "mlsyl-grid-test-" << std::hex << gen();
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string File(const std::string& name, const std::string& content) {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
};

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    files[entry.path().filename().string()] = buf.str();
  }
  return files;
}

std::size_t CountWithPrefix(const std::map<std::string, std::string>& files,
                            const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& [name, content] : files) {
    if (name.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

std::size_t CountLines(const std::string& content) {
  std::size_t n = 0;
  for (char c : content) {
    if (c == '\n') ++n;
  }
  return n;
}

// Toy grid: word counts in the deduped corpus are അവൻ=5, വള=4,
// ഇടുകയില്ല=2, അത്=1; the base vocabulary is {അവൻ, വള}.
ExperimentConfig ToyConfig(TempDir& dir) {
  ExperimentConfig cfg;
  cfg.lm_corpus = dir.File("lm.txt",
                           "അവൻ വള\nഅവൻ വള\nഅവൻ വള\n"
                           "അവൻ ഇടുകയില്ല\nഅവൻ ഇടുകയില്ല\n"
                           "വള അത്\nഅവൻ അത്\n");
  cfg.train_transcripts = dir.File("train.txt", "അവൻ\nവള അവൻ\n");
  cfg.test_transcripts = dir.File("test.txt", "അവൻ അത്\nവള ഇടുകയില്ല\n");
  cfg.orders = {2, 3};
  cfg.thresholds = {std::nullopt, 2};
  cfg.out_dir = (dir.path / "out").string();
  return cfg;
}

TEST_CASE("config parsing") {
  SUBCASE("full file round-trips every key") {
    ExperimentConfig cfg = ParseExperimentConfigText(
        "# pipeline inputs\n"
        "lm_corpus = corpus.txt\n"
        "train_transcripts = train.txt\n"
        "\n"
        "test_transcripts = test.txt\n"
        "hypothesis_word = hyp_w.txt\n"
        "hypothesis_syllable = hyp_s.txt\n"
        "modes = word, syllable\n"
        "orders = 2,3 , 4\n"
        "thresholds = none, 5, 3\n"
        "smoothing = add_k:0.5\n"
        "out_dir = out\n",
        "cfg");
    CHECK(cfg.lm_corpus == "corpus.txt");
    CHECK(cfg.train_transcripts == "train.txt");
    CHECK(cfg.test_transcripts == "test.txt");
    CHECK(cfg.hypothesis_word == "hyp_w.txt");
    CHECK(cfg.hypothesis_syllable == "hyp_s.txt");
    REQUIRE(cfg.modes.size() == 2);
    CHECK(cfg.modes[0] == TokenMode::Word);
    CHECK(cfg.modes[1] == TokenMode::Syllable);
    CHECK(cfg.orders == std::vector<int>{2, 3, 4});
    REQUIRE(cfg.thresholds.size() == 3);
    CHECK(!cfg.thresholds[0].has_value());
    CHECK(cfg.thresholds[1] == 5);
    CHECK(cfg.thresholds[2] == 3);
    CHECK(cfg.smoothing.add_k == doctest::Approx(0.5));
    CHECK(cfg.out_dir == "out");
  }

  SUBCASE("unknown keys are rejected with file and line") {
    try {
      ParseExperimentConfigText("lm_corpus = a\nbogus_key = 1\n", "my.cfg");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("my.cfg:2") != std::string::npos);
      CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
  }

  SUBCASE("malformed lines and values are rejected") {
    CHECK_THROWS_AS(ParseExperimentConfigText("just words\n", "c"),
                    ConfigError);
    CHECK_THROWS_AS(ParseExperimentConfigText("orders = 2,x\n", "c"),
                    ConfigError);
    CHECK_THROWS_AS(ParseExperimentConfigText("orders = 0\n", "c"),
                    ConfigError);
    CHECK_THROWS_AS(ParseExperimentConfigText("thresholds = 0\n", "c"),
                    ConfigError);
    CHECK_THROWS_AS(ParseExperimentConfigText("modes = phoneme\n", "c"),
                    ConfigError);
    CHECK_THROWS_AS(ParseExperimentConfigText("smoothing = kneser_ney\n", "c"),
                    ConfigError);
  }

  SUBCASE("later assignments override earlier ones") {
    ExperimentConfig cfg =
        ParseExperimentConfigText("out_dir = first\nout_dir = second\n", "c");
    CHECK(cfg.out_dir == "second");
  }

  SUBCASE("validation requires the input keys") {
    ExperimentConfig cfg;
    CHECK_THROWS_AS(cfg.Validate(), ConfigError);
    cfg.lm_corpus = "a";
    cfg.train_transcripts = "b";
    cfg.test_transcripts = "c";
    CHECK_THROWS_AS(cfg.Validate(), ConfigError);  // out_dir still missing
    cfg.out_dir = "out";
    CHECK_NOTHROW(cfg.Validate());
  }

  SUBCASE("out_dir must not alias an input path") {
    ExperimentConfig cfg;
    cfg.lm_corpus = "data/corpus.txt";
    cfg.train_transcripts = "b";
    cfg.test_transcripts = "c";
    cfg.out_dir = "data/./corpus.txt";
    CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  }
}

TEST_CASE("grid run: artifacts, cells and hand-counted statistics") {
  TempDir dir;
  ExperimentConfig cfg = ToyConfig(dir);
  ExperimentReport report = RunExperiment(cfg);

  // One LM corpus line matches a test sentence and is removed before counts.
  CHECK(report.dedup_removed == 1);
  CHECK(report.failed_cells == 0);
  REQUIRE(report.cells.size() == 8);  // 2 modes x 2 thresholds x 2 orders

  // Lexicons are shared across orders: each (mode, threshold) pair reports
  // one size. Base-only = {അവൻ, വള}; threshold 2 admits ഇടുകയില്ല but
  // not അത് (count 1 after dedup -- before dedup it would be 2).
  std::map<std::pair<std::string, std::string>, std::size_t> sizes;
  std::map<std::pair<std::string, std::string>, double> oov;
  for (const ExperimentCell& cell : report.cells) {
    CHECK(!cell.failed);
    CHECK(!cell.wer.has_value());
    const std::pair<std::string, std::string> key{
        TokenModeName(cell.mode), cell.threshold_label};
    sizes[key] = cell.lexicon_size;
    oov[key] = cell.oov_rate;
  }
  CHECK(sizes.at({"word", "none"}) == 2);
  CHECK(sizes.at({"word", "2"}) == 3);
  CHECK(sizes.at({"syllable", "none"}) == 4);
  CHECK(sizes.at({"syllable", "2"}) == 9);

  // Test set has 4 word tokens and 11 syllable tokens.
  CHECK(oov.at({"word", "none"}) == doctest::Approx(2.0 / 4.0));
  CHECK(oov.at({"word", "2"}) == doctest::Approx(1.0 / 4.0));
  CHECK(oov.at({"syllable", "none"}) == doctest::Approx(6.0 / 11.0));
  CHECK(oov.at({"syllable", "2"}) == doctest::Approx(1.0 / 11.0));

  const auto files = Snapshot(cfg.out_dir);
  CHECK(CountWithPrefix(files, "corpus-deduped-") == 1);
  CHECK(CountWithPrefix(files, "tokens-word-") == 1);
  CHECK(CountWithPrefix(files, "tokens-syllable-") == 1);
  CHECK(CountWithPrefix(files, "lexicon-word-") == 2);
  CHECK(CountWithPrefix(files, "lexicon-syllable-") == 2);
  CHECK(CountWithPrefix(files, "lm-word-") == 2);
  CHECK(CountWithPrefix(files, "lm-syllable-") == 2);
  CHECK(files.count("report.tsv") == 1);
  CHECK(files.count("report.md") == 1);

  // The lexicon file referenced by a cell holds exactly lexicon_size lines.
  for (const ExperimentCell& cell : report.cells) {
    REQUIRE(files.count(cell.lexicon_file) == 1);
    CHECK(CountLines(files.at(cell.lexicon_file)) == cell.lexicon_size);
    REQUIRE(files.count(cell.model_file) == 1);
    CHECK(files.at(cell.model_file).size() == cell.model_bytes);
  }

  // The deduped corpus artifact no longer contains the test sentence.
  for (const auto& [name, content] : files) {
    if (name.rfind("corpus-deduped-", 0) == 0) {
      CHECK(CountLines(content) == 6);
      CHECK(content.find("അവൻ അത്") == std::string::npos);
    }
  }

  SUBCASE("rerunning reuses every artifact byte for byte") {
    ExperimentReport again = RunExperiment(cfg);
    CHECK(again.cells.size() == report.cells.size());
    CHECK(Snapshot(cfg.out_dir) == files);
  }
}

TEST_CASE("grid run: word-only mode writes no syllable artifacts") {
  TempDir dir;
  ExperimentConfig cfg = ToyConfig(dir);
  cfg.modes = {TokenMode::Word};
  ExperimentReport report = RunExperiment(cfg);
  CHECK(report.cells.size() == 4);
  const auto files = Snapshot(cfg.out_dir);
  CHECK(CountWithPrefix(files, "tokens-syllable-") == 0);
  CHECK(CountWithPrefix(files, "lexicon-syllable-") == 0);
  CHECK(CountWithPrefix(files, "lm-syllable-") == 0);
  CHECK(CountWithPrefix(files, "lm-word-") == 2);
}

TEST_CASE("grid run: decoder hypotheses populate word error rates") {
  TempDir dir;
  ExperimentConfig cfg = ToyConfig(dir);
  // One substituted word out of four reference words; the syllable stream
  // detokenizes to the references exactly.
  cfg.hypothesis_word = dir.File("hyp_w.txt", "അവൻ അത്\nവള വള\n");
  cfg.hypothesis_syllable =
      dir.File("hyp_s.txt", "അ+ വൻ അ+ ത്\nവ+ ള ഇ+ ടു+ ക+ യി+ ല്ല\n");
  ExperimentReport report = RunExperiment(cfg);
  for (const ExperimentCell& cell : report.cells) {
    REQUIRE(cell.wer.has_value());
    if (cell.mode == TokenMode::Word) {
      CHECK(*cell.wer == doctest::Approx(0.25));
    } else {
      CHECK(*cell.wer == doctest::Approx(0.0));
    }
  }

  SUBCASE("hypothesis length must match the test set") {
    cfg.hypothesis_word = dir.File("hyp_short.txt", "അവൻ അത്\n");
    CHECK_THROWS_AS(RunExperiment(cfg), ConfigError);
  }
}

TEST_CASE("grid run: an empty base vocabulary fails cells, not the run") {
  TempDir dir;
  ExperimentConfig cfg = ToyConfig(dir);
  cfg.train_transcripts = dir.File("train_empty.txt", "");
  ExperimentReport report = RunExperiment(cfg);
  CHECK(report.failed_cells == report.cells.size());
  for (const ExperimentCell& cell : report.cells) {
    CHECK(cell.failed);
    CHECK(!cell.diagnostic.empty());
  }

  // Failed cells render as em dashes with footnoted diagnostics.
  const std::string tsv = RenderReport(report, ReportFormat::Tsv);
  CHECK(tsv.find("\xe2\x80\x94") != std::string::npos);
  CHECK(tsv.find("# failed: mode=word threshold=none order=2:") !=
        std::string::npos);
  const std::string md = RenderReport(report, ReportFormat::Markdown);
  CHECK(md.find("## Failed cells") != std::string::npos);
  CHECK(md.find("| \xe2\x80\x94 |") != std::string::npos);
}

TEST_CASE("report rendering of an empty report") {
  ExperimentReport report;
  const std::string tsv = RenderReport(report, ReportFormat::Tsv);
  CHECK(tsv.rfind("mode\tthreshold\torder\tlexicon_size", 0) == 0);
  CHECK(tsv.find("# dedup_removed\t0") != std::string::npos);
  const std::string md = RenderReport(report, ReportFormat::Markdown);
  CHECK(md.find("| mode |") != std::string::npos);
  CHECK(md.find("Removed 0 LM corpus lines") != std::string::npos);
}

}  // namespace
}  // namespace mlsyl
