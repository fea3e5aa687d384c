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

#include "mlsyl/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "mlsyl/corpus.hpp"
#include "mlsyl/errors.hpp"

namespace mlsyl {

namespace {

std::string JoinGram(const std::vector<std::string>& words, std::size_t begin,
                     std::size_t end) {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) key.push_back(' ');
    key.append(words[i]);
  }
  return key;
}

std::string FormatLog(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string_view Trim(std::string_view s) {
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

bool ParseDouble(const std::string& text, double* out) {
  char* end = nullptr;
  *out = std::strtod(text.c_str(), &end);
  return end != text.c_str() && *end == '\0';
}

}  // namespace

Smoothing Smoothing::AddK(double k) {
  if (k < 0) throw ConfigError("add_k smoothing needs k >= 0");
  Smoothing s;
  s.kind = Kind::AddK;
  s.add_k = k;
  return s;
}

Smoothing Smoothing::Parse(std::string_view text) {
  if (text == "witten_bell") return WittenBell();
  constexpr std::string_view kPrefix = "add_k:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    const std::string num(text.substr(kPrefix.size()));
    double k;
    if (!ParseDouble(num, &k) || k < 0)
      throw ConfigError("bad add_k constant in '" + std::string(text) + "'");
    return AddK(k);
  }
  throw ConfigError("unknown smoothing '" + std::string(text) +
                    "' (expected witten_bell or add_k:K)");
}

std::string Smoothing::Describe() const {
  if (kind == Kind::WittenBell) return "witten_bell";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "add_k:%g", add_k);
  return buf;
}

CountTable::CountTable(int order) : order_(order) {
  if (order < 1) throw InvalidOrderError(order);
  levels_.resize(static_cast<std::size_t>(order));
}

void CountTable::AddSentence(const std::vector<std::string>& tokens) {
  ++sentences_;
  std::vector<std::string> seq;
  seq.reserve(tokens.size() + 2);
  seq.emplace_back(kBos);
  seq.insert(seq.end(), tokens.begin(), tokens.end());
  seq.emplace_back(kEos);
  for (int k = 1; k <= order_; ++k) {
    const std::size_t width = static_cast<std::size_t>(k);
    if (seq.size() < width) break;
    for (std::size_t i = 0; i + width <= seq.size(); ++i)
      ++levels_[width - 1][JoinGram(seq, i, i + width)];
  }
}

void CountTable::Merge(const CountTable& other) {
  if (other.order_ != order_)
    throw ConfigError("cannot merge count tables of different orders");
  sentences_ += other.sentences_;
  for (int k = 1; k <= order_; ++k) {
    for (const auto& [gram, count] : other.levels_[k - 1])
      levels_[k - 1][gram] += count;
  }
}

const std::unordered_map<std::string, std::uint64_t>& CountTable::Level(
    int k) const {
  if (k < 1 || k > order_) throw InvalidOrderError(k);
  return levels_[static_cast<std::size_t>(k) - 1];
}

CountTable CountNgrams(std::istream& corpus, int order) {
  CountTable table(order);
  std::string line;
  while (std::getline(corpus, line)) table.AddSentence(SplitTokens(line));
  return table;
}

NgramModel::NgramModel(int order) : order_(order) {
  if (order < 1) throw InvalidOrderError(order);
  levels_.resize(static_cast<std::size_t>(order));
}

const std::unordered_map<std::string, ModelEntry>& NgramModel::Level(
    int k) const {
  if (k < 1 || k > order_) throw InvalidOrderError(k);
  return levels_[static_cast<std::size_t>(k) - 1];
}

std::unordered_map<std::string, ModelEntry>& NgramModel::MutableLevel(int k) {
  if (k < 1 || k > order_) throw InvalidOrderError(k);
  return levels_[static_cast<std::size_t>(k) - 1];
}

bool NgramModel::InVocabulary(const std::string& token) const {
  return levels_[0].count(token) != 0;
}

double NgramModel::LogProbMapped(const std::vector<std::string>& gram,
                                 std::size_t begin) const {
  const std::size_t k = gram.size() - begin;
  const auto& level = levels_[k - 1];
  if (auto it = level.find(JoinGram(gram, begin, gram.size()));
      it != level.end()) {
    return it->second.logprob;
  }
  if (k == 1) return kLogFloor;
  double bow = 0.0;
  const auto& context_level = levels_[k - 2];
  if (auto it = context_level.find(JoinGram(gram, begin, gram.size() - 1));
      it != context_level.end() && it->second.has_backoff) {
    bow = it->second.backoff;
  }
  return bow + LogProbMapped(gram, begin + 1);
}

double NgramModel::ConditionalLogProb(const std::vector<std::string>& context,
                                      const std::string& token) const {
  const std::size_t clip =
      std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  std::vector<std::string> gram;
  gram.reserve(clip + 1);
  for (std::size_t i = context.size() - clip; i < context.size(); ++i)
    gram.push_back(InVocabulary(context[i]) ? context[i] : kUnk);
  gram.push_back(InVocabulary(token) ? token : kUnk);
  return LogProbMapped(gram, 0);
}

double NgramModel::SentenceLogProb(
    const std::vector<std::string>& tokens) const {
  std::vector<std::string> history{kBos};
  history.reserve(tokens.size() + 1);
  double total = 0.0;
  for (const std::string& t : tokens) {
    total += ConditionalLogProb(history, t);
    history.push_back(t);
  }
  total += ConditionalLogProb(history, kEos);
  return total;
}

NgramModel EstimateModel(const CountTable& counts,
                         const EstimateOptions& options) {
  const int order = counts.order();
  const Smoothing& sm = options.smoothing;
  const bool witten_bell = sm.kind == Smoothing::Kind::WittenBell;
  auto cutoff = [&](int k) -> std::uint64_t {
    const std::size_t idx = static_cast<std::size_t>(k) - 1;
    return idx < options.cutoffs.size() && options.cutoffs[idx] > 1
               ? options.cutoffs[idx]
               : 1;
  };

  NgramModel model(order);

  // Unigram level: <s> is a context anchor, never a prediction, so it is
  // excluded from the probability mass and pinned at the floor.
  const auto& unigrams = counts.Level(1);
  std::uint64_t total = 0;
  std::uint64_t types = 0;
  bool unk_observed = false;
  for (const auto& [w, c] : unigrams) {
    if (w == kBos || c < cutoff(1)) continue;
    total += c;
    ++types;
    if (w == kUnk) unk_observed = true;
  }
  if (types == 0) throw DegenerateCorpusError();
  const double vpred = static_cast<double>(types) + (unk_observed ? 0 : 1);

  auto& level1 = model.MutableLevel(1);
  const double uni_denom =
      witten_bell ? static_cast<double>(total + types)
                  : static_cast<double>(total) + sm.add_k * vpred;
  for (const auto& [w, c] : unigrams) {
    if (w == kBos || c < cutoff(1)) continue;
    const double p = witten_bell
                         ? static_cast<double>(c) / uni_denom
                         : (static_cast<double>(c) + sm.add_k) / uni_denom;
    level1[w].logprob = std::log10(p);
  }
  if (!unk_observed) {
    // The reserved mass: all of Witten-Bell's leftover, or add_k's share for
    // one unseen type. Zero mass (pure MLE) falls to the floor.
    const double unk_p =
        witten_bell ? static_cast<double>(types) / uni_denom
                    : (sm.add_k > 0 ? sm.add_k / uni_denom : 0.0);
    level1[kUnk].logprob = unk_p > 0 ? std::log10(unk_p) : kLogFloor;
  } else {
    // A literal unknown token in training additionally absorbs the leftover.
    const std::uint64_t c = unigrams.at(kUnk);
    const double p = witten_bell
                         ? static_cast<double>(c + types) / uni_denom
                         : (static_cast<double>(c) + sm.add_k) / uni_denom;
    level1[kUnk].logprob = std::log10(p);
  }
  level1[kBos].logprob = kLogFloor;

  struct ContextStats {
    std::uint64_t total = 0;
    std::uint64_t types = 0;
    std::vector<std::pair<std::string, std::uint64_t>> events;  // word, count
  };

  for (int k = 2; k <= order; ++k) {
    std::unordered_map<std::string, ContextStats> contexts;
    for (const auto& [gram, c] : counts.Level(k)) {
      if (c < cutoff(k)) continue;
      const std::size_t cut = gram.rfind(' ');
      ContextStats& ctx = contexts[gram.substr(0, cut)];
      ctx.total += c;
      ctx.types += 1;
      ctx.events.emplace_back(gram.substr(cut + 1), c);
    }
    auto& level = model.MutableLevel(k);
    auto& context_level = model.MutableLevel(k - 1);
    for (const auto& [ckey, ctx] : contexts) {
      const double denom =
          witten_bell ? static_cast<double>(ctx.total + ctx.types)
                      : static_cast<double>(ctx.total) + sm.add_k * vpred;
      double leftover;
      if (witten_bell) {
        leftover = static_cast<double>(ctx.types) / denom;
      } else {
        leftover =
            sm.add_k * (vpred - static_cast<double>(ctx.types)) / denom;
      }
      for (const auto& [word, c] : ctx.events) {
        const double p =
            witten_bell ? static_cast<double>(c) / denom
                        : (static_cast<double>(c) + sm.add_k) / denom;
        level[ckey + ' ' + word].logprob = std::log10(p);
      }
      // Backoff weight: leftover mass scaled by the lower-order mass of the
      // words NOT seen after this context.
      double bow_log = kLogFloor;
      if (leftover > 0) {
        const std::size_t sp = ckey.find(' ');
        const std::vector<std::string> suffix_context =
            SplitTokens(sp == std::string::npos
                            ? std::string_view{}
                            : std::string_view(ckey).substr(sp + 1));
        double seen = 0.0;
        for (const auto& [word, c] : ctx.events) {
          (void)c;
          seen += std::pow(10.0, model.ConditionalLogProb(suffix_context, word));
        }
        const double residual = 1.0 - seen;
        if (residual > 1e-12) bow_log = std::log10(leftover / residual);
      }
      auto [it, inserted] = context_level.try_emplace(ckey);
      if (inserted) it->second.logprob = kLogFloor;
      it->second.backoff = bow_log;
      it->second.has_backoff = true;
    }
  }
  return model;
}

double PerplexityReport::Perplexity() const {
  if (predictions == 0) return 1.0;
  return std::pow(10.0,
                  -logprob10 / static_cast<double>(predictions));
}

PerplexityReport CorpusPerplexity(const NgramModel& model,
                                  std::istream& corpus) {
  PerplexityReport rep;
  std::string line;
  while (std::getline(corpus, line)) {
    const std::vector<std::string> tokens = SplitTokens(line);
    rep.logprob10 += model.SentenceLogProb(tokens);
    rep.predictions += tokens.size() + 1;
    ++rep.sentences;
    for (const std::string& t : tokens) {
      if (!model.InVocabulary(t)) ++rep.oov_tokens;
    }
  }
  if (rep.sentences == 0) throw EmptyCorpusError();
  return rep;
}

void WriteArpa(const NgramModel& model, std::ostream& out) {
  out << "\\data\\\n";
  for (int k = 1; k <= model.order(); ++k)
    out << "ngram " << k << "=" << model.Level(k).size() << "\n";
  for (int k = 1; k <= model.order(); ++k) {
    out << "\n\\" << k << "-grams:\n";
    const auto& level = model.Level(k);
    std::vector<const std::string*> keys;
    keys.reserve(level.size());
    for (const auto& [gram, entry] : level) keys.push_back(&gram);
    std::sort(keys.begin(), keys.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    for (const std::string* gram : keys) {
      const ModelEntry& e = level.at(*gram);
      out << FormatLog(e.logprob) << '\t' << *gram;
      if (e.has_backoff) out << '\t' << FormatLog(e.backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

void WriteArpaFile(const NgramModel& model, const std::string& path) {
  std::ofstream out = OpenOutputFile(path);
  WriteArpa(model, out);
}

std::string ArpaString(const NgramModel& model) {
  std::ostringstream out;
  WriteArpa(model, out);
  return out.str();
}

NgramModel ReadArpa(std::istream& in) {
  const std::vector<std::string> lines = ReadLines(in);
  std::size_t i = 0;
  auto skip_blanks = [&] {
    while (i < lines.size() && Trim(lines[i]).empty()) ++i;
  };

  skip_blanks();
  if (i >= lines.size() || Trim(lines[i]) != "\\data\\")
    throw MalformedArpaError(i + 1, "expected \\data\\ header");
  ++i;

  std::vector<std::uint64_t> declared;
  while (i < lines.size()) {
    const std::string_view t = Trim(lines[i]);
    if (t.empty()) {
      ++i;
      continue;
    }
    if (t.front() == '\\') break;
    int k = 0;
    unsigned long long n = 0;
    char extra = '\0';
    const std::string row(t);
    if (std::sscanf(row.c_str(), "ngram %d=%llu%c", &k, &n, &extra) != 2 ||
        k < 1) {
      throw MalformedArpaError(i + 1, "bad ngram count line");
    }
    if (static_cast<std::size_t>(k) > declared.size())
      declared.resize(static_cast<std::size_t>(k), ~0ull);
    declared[static_cast<std::size_t>(k) - 1] = n;
    ++i;
  }
  if (declared.empty())
    throw MalformedArpaError(i + 1, "no ngram count lines");
  for (std::size_t k = 0; k < declared.size(); ++k) {
    if (declared[k] == ~0ull)
      throw MalformedArpaError(i + 1, "missing ngram count for order " +
                                          std::to_string(k + 1));
  }

  const int order = static_cast<int>(declared.size());
  NgramModel model(order);
  for (int k = 1; k <= order; ++k) {
    skip_blanks();
    const std::string expected = "\\" + std::to_string(k) + "-grams:";
    if (i >= lines.size() || Trim(lines[i]) != expected)
      throw MalformedArpaError(i + 1, "expected " + expected);
    ++i;
    auto& level = model.MutableLevel(k);
    while (i < lines.size()) {
      const std::string_view t = Trim(lines[i]);
      if (t.empty()) {
        ++i;
        continue;
      }
      if (t.front() == '\\') break;
      const std::vector<std::string> fields = SplitTokens(lines[i]);
      const std::size_t width = static_cast<std::size_t>(k);
      if (fields.size() != width + 1 && fields.size() != width + 2)
        throw MalformedArpaError(i + 1, "wrong field count for a " +
                                            std::to_string(k) + "-gram");
      ModelEntry entry;
      if (!ParseDouble(fields[0], &entry.logprob))
        throw MalformedArpaError(i + 1, "bad log probability");
      if (fields.size() == width + 2) {
        if (k == order)
          throw MalformedArpaError(i + 1,
                                   "backoff weight on a top-order gram");
        if (!ParseDouble(fields[width + 1], &entry.backoff))
          throw MalformedArpaError(i + 1, "bad backoff weight");
        entry.has_backoff = true;
      }
      std::string gram = fields[1];
      for (std::size_t w = 2; w <= width; ++w) {
        gram.push_back(' ');
        gram.append(fields[w]);
      }
      if (!level.emplace(std::move(gram), entry).second)
        throw MalformedArpaError(i + 1, "duplicate gram");
      ++i;
    }
    if (level.size() != declared[static_cast<std::size_t>(k) - 1])
      throw MalformedArpaError(
          i + 1, "ngram " + std::to_string(k) + " section has " +
                     std::to_string(level.size()) + " entries, header says " +
                     std::to_string(declared[static_cast<std::size_t>(k) - 1]));
  }
  skip_blanks();
  if (i >= lines.size() || Trim(lines[i]) != "\\end\\")
    throw MalformedArpaError(i + 1, "missing \\end\\");
  return model;
}

NgramModel ReadArpaFile(const std::string& path) {
  std::ifstream in = OpenInputFile(path);
  return ReadArpa(in);
}

std::uint64_t ModelFootprint::TotalGrams() const {
  std::uint64_t sum = 0;
  for (std::uint64_t n : grams_per_order) sum += n;
  return sum;
}

ModelFootprint ComputeFootprint(const NgramModel& model) {
  ModelFootprint fp;
  for (int k = 1; k <= model.order(); ++k)
    fp.grams_per_order.push_back(model.Level(k).size());
  fp.serialized_bytes = ArpaString(model).size();
  return fp;
}

}  // namespace mlsyl
