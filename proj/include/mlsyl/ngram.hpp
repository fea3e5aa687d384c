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

#ifndef MLSYL_NGRAM_HPP_
#define MLSYL_NGRAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mlsyl {

inline constexpr const char* kBos = "<s>";
inline constexpr const char* kEos = "</s>";
inline constexpr const char* kUnk = "<unk>";

// log10 floor standing in for zero probability / zero backoff mass. Keeps
// every sentence log-probability finite (open-vocabulary contract) while
// staying below any 1e-6 normalization tolerance.
inline constexpr double kLogFloor = -99.0;

struct Smoothing {
  enum class Kind { WittenBell, AddK };
  Kind kind = Kind::WittenBell;
  double add_k = 0.0;

  static Smoothing WittenBell() { return Smoothing{}; }
  static Smoothing AddK(double k);
  // "witten_bell" or "add_k:K"; throws ConfigError.
  static Smoothing Parse(std::string_view text);
  std::string Describe() const;
};

// Raw k-gram occurrence counts for k = 1..order. Each sentence is wrapped
// with <s>/</s> before windowing, so every k-gram's (k-1)-prefix and
// (k-1)-suffix are themselves counted.
class CountTable {
 public:
  explicit CountTable(int order);

  int order() const { return order_; }
  std::uint64_t sentences() const { return sentences_; }

  void AddSentence(const std::vector<std::string>& tokens);
  // Commutative count addition, for sharded counting.
  void Merge(const CountTable& other);

  // k in [1, order]; keys are space-joined k-grams.
  const std::unordered_map<std::string, std::uint64_t>& Level(int k) const;

  bool Empty() const { return levels_[0].empty(); }

 private:
  int order_;
  std::uint64_t sentences_ = 0;
  std::vector<std::unordered_map<std::string, std::uint64_t>> levels_;
};

// Counts all k-grams of a tokenized line stream. Throws InvalidOrderError.
CountTable CountNgrams(std::istream& corpus, int order);

struct ModelEntry {
  double logprob = 0.0;
  double backoff = 0.0;
  bool has_backoff = false;
};

// Back-off model in ARPA terms: per-level log10 probabilities plus log10
// backoff weights on grams that act as contexts. <s> carries the floor
// probability (it is conditioned on, never predicted); <unk> absorbs the
// smoothing's reserved unigram mass.
class NgramModel {
 public:
  explicit NgramModel(int order);

  int order() const { return order_; }
  const std::unordered_map<std::string, ModelEntry>& Level(int k) const;
  std::unordered_map<std::string, ModelEntry>& MutableLevel(int k);
  std::size_t VocabularySize() const { return levels_[0].size(); }
  bool InVocabulary(const std::string& token) const;

  // log10 P(token | context); OOV tokens (in either position) map to <unk>,
  // the context is clipped to the last order-1 entries, and unseen grams back
  // off. Always finite.
  double ConditionalLogProb(const std::vector<std::string>& context,
                            const std::string& token) const;

  // Chain over <s> token... </s>; the end sentinel is predicted.
  double SentenceLogProb(const std::vector<std::string>& tokens) const;

 private:
  double LogProbMapped(const std::vector<std::string>& gram,
                       std::size_t begin) const;

  int order_;
  std::vector<std::unordered_map<std::string, ModelEntry>> levels_;
};

struct EstimateOptions {
  Smoothing smoothing;
  // cutoffs[k-1]: minimum count a k-gram needs to receive an entry; values
  // <= 1 (and missing entries) keep everything.
  std::vector<std::uint64_t> cutoffs;
};

// Throws DegenerateCorpusError when the count table has no unigrams.
NgramModel EstimateModel(const CountTable& counts,
                         const EstimateOptions& options = {});

struct PerplexityReport {
  double logprob10 = 0.0;
  std::uint64_t predictions = 0;  // tokens plus one </s> per line
  std::uint64_t sentences = 0;
  std::uint64_t oov_tokens = 0;

  double Perplexity() const;
};

// Throws EmptyCorpusError when the stream has no lines.
PerplexityReport CorpusPerplexity(const NgramModel& model,
                                  std::istream& corpus);

// ARPA text format: \data\ counts, per-level sections of
// `logprob<TAB>gram[<TAB>backoff]`, \end\. Reading accepts space- or
// tab-separated fields and throws MalformedArpaError on structural faults.
void WriteArpa(const NgramModel& model, std::ostream& out);
void WriteArpaFile(const NgramModel& model, const std::string& path);
std::string ArpaString(const NgramModel& model);
NgramModel ReadArpa(std::istream& in);
NgramModel ReadArpaFile(const std::string& path);

struct ModelFootprint {
  std::vector<std::uint64_t> grams_per_order;
  std::uint64_t serialized_bytes = 0;

  std::uint64_t TotalGrams() const;
};

ModelFootprint ComputeFootprint(const NgramModel& model);

}  // namespace mlsyl

#endif  // MLSYL_NGRAM_HPP_
