// Ground truth vs prediction comparison: exact match, token-set F1 (raw and
// preprocessed) and embedding cosine similarity, averaged per component.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "uccx/components.hpp"
#include "uccx/io.hpp"
#include "uccx/text.hpp"

namespace uccx {

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Lexical resources

/// Stopword set and lemma table, loaded from data/lexicon/.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon load(const fs::path& dir, const std::string& stopword_list_id,
                      const std::string& lemma_table_id) {
    Lexicon lex;
    lex.stopword_list_id_ = stopword_list_id;
    lex.lemma_table_id_ = lemma_table_id;
    for (const auto& line : text::split_lines(io::read_file(dir / ("stopwords_" + stopword_list_id + ".txt")))) {
      auto w = text::trim(line);
      if (!w.empty() && w[0] != '#') lex.stopwords_.insert(w);
    }
    for (const auto& line : text::split_lines(io::read_file(dir / ("lemmas_" + lemma_table_id + ".tsv")))) {
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      lex.lemmas_[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return lex;
  }

  /// Loaded once per (stopword, lemma) id pair from the data directory.
  static const Lexicon& bundled(const std::string& stopword_list_id = "en_179",
                                const std::string& lemma_table_id = "en_core") {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::string>, std::unique_ptr<Lexicon>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{stopword_list_id, lemma_table_id}];
    if (!slot) {
      slot = std::make_unique<Lexicon>(
          load(io::data_dir() / "lexicon", stopword_list_id, lemma_table_id));
    }
    return *slot;
  }

  bool is_stopword(const std::string& w) const { return stopwords_.count(w) > 0; }

  const std::string& lemma(const std::string& w) const {
    auto it = lemmas_.find(w);
    return it == lemmas_.end() ? w : it->second;
  }

  size_t stopword_count() const { return stopwords_.size(); }
  size_t lemma_count() const { return lemmas_.size(); }

 private:
  std::string stopword_list_id_;
  std::string lemma_table_id_;
  std::unordered_set<std::string> stopwords_;
  std::unordered_map<std::string, std::string> lemmas_;
};

struct TokenPipeline {
  bool lowercase = true;
  bool strip_punctuation = false;
  bool remove_stopwords = false;
  bool lemmatize = false;
  std::string stopword_list_id = "en_179";
  std::string lemma_table_id = "en_core";

  static TokenPipeline raw() { return {}; }
  static TokenPipeline preprocessed() { return {true, true, true, true}; }
};

/// Whitespace split, edge punctuation stripped, then the pipeline stages in
/// order: lowercase, split on inner punctuation (apostrophes inside a word
/// survive), lemmatize, drop stopwords.
inline std::vector<std::string> pipeline_tokens(std::string_view s, const TokenPipeline& pipe,
                                                const Lexicon& lex) {
  std::vector<std::string> out;
  for (const auto& tok : text::whitespace_tokens(s)) {
    std::string t = text::strip_edge_punct(tok.text);
    if (t.empty()) continue;
    if (pipe.lowercase) t = text::to_lower(t);

    std::vector<std::string> pieces;
    if (pipe.strip_punctuation) {
      auto cps = text::decode_utf8(t);
      std::string cur;
      for (size_t i = 0; i < cps.size(); ++i) {
        char32_t c = cps[i];
        bool inner_apostrophe = text::is_apostrophe(c) && i > 0 && i + 1 < cps.size() &&
                                !text::is_punct(cps[i - 1]) && !text::is_punct(cps[i + 1]);
        if (inner_apostrophe) {
          cur.push_back('\'');
        } else if (text::is_punct(c)) {
          if (!cur.empty()) pieces.push_back(std::move(cur));
          cur.clear();
        } else {
          text::append_utf8(cur, c);
        }
      }
      if (!cur.empty()) pieces.push_back(std::move(cur));
    } else {
      pieces.push_back(std::move(t));
    }

    for (auto& p : pieces) {
      std::string key = pipe.lowercase ? p : text::to_lower(p);
      if (pipe.lemmatize) {
        const auto& l = lex.lemma(key);
        if (l != key) p = key = l;
      }
      if (pipe.remove_stopwords && lex.is_stopword(key)) continue;
      out.push_back(std::move(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact match

/// 1 iff the comma-joined, element-trimmed lists are equal. Comparison
/// ignores case unless strict_case is set. Two empty lists match.
inline int exact_match(const std::vector<std::string>& gt, const std::vector<std::string>& pred,
                       bool strict_case = false) {
  auto canon = [strict_case](const std::vector<std::string>& v) {
    std::vector<std::string> parts;
    for (const auto& e : v) parts.push_back(strict_case ? text::trim(e) : text::to_lower(text::trim(e)));
    return text::join(parts, ",");
  };
  if (gt.size() != pred.size()) return 0;
  return canon(gt) == canon(pred) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Token F1

enum class F1Convention {
  kComputed,    // both token sets non-empty
  kBothEmpty,   // (1, 1, 1)
  kOneEmpty,    // (0, 0, 0)
};

struct F1Score {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  size_t gt_unique = 0;
  size_t pred_unique = 0;
  size_t true_positives = 0;
  F1Convention convention = F1Convention::kComputed;
};

inline std::set<std::string> unique_tokens(const std::vector<std::string>& elements,
                                           const TokenPipeline& pipe, const Lexicon& lex) {
  auto toks = pipeline_tokens(text::join(elements, ", "), pipe, lex);
  return {toks.begin(), toks.end()};
}

/// Set-based precision/recall/F1 over the unique tokens of each side. F1 is
/// the harmonic mean 2PR/(P+R).
inline F1Score token_f1(const std::vector<std::string>& gt, const std::vector<std::string>& pred,
                        const TokenPipeline& pipe, const Lexicon& lex) {
  auto g = unique_tokens(gt, pipe, lex);
  auto p = unique_tokens(pred, pipe, lex);
  F1Score s;
  s.gt_unique = g.size();
  s.pred_unique = p.size();
  if (g.empty() && p.empty()) {
    s.precision = s.recall = s.f1 = 1.0;
    s.convention = F1Convention::kBothEmpty;
    return s;
  }
  if (g.empty() || p.empty()) {
    s.convention = F1Convention::kOneEmpty;
    return s;
  }
  for (const auto& t : p) s.true_positives += g.count(t);
  if (s.true_positives == 0) return s;
  double tp = static_cast<double>(s.true_positives);
  s.precision = tp / static_cast<double>(p.size());  // TP / (TP + FP)
  s.recall = tp / static_cast<double>(g.size());     // TP / (TP + FN)
  s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

inline F1Score token_f1(const std::vector<std::string>& gt, const std::vector<std::string>& pred,
                        const TokenPipeline& pipe) {
  return token_f1(gt, pred, pipe, Lexicon::bundled(pipe.stopword_list_id, pipe.lemma_table_id));
}

// ---------------------------------------------------------------------------
// Embeddings

/// Deterministic text -> fixed-dimension vector.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string id() const = 0;
  virtual size_t dim() const = 0;
  virtual std::vector<double> embed(const std::string& text) = 0;
};

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hashed bag of lowercased tokens with count weights. Stopwords are kept so
/// that short strings never embed to zero.
class BagEmbedder : public Embedder {
 public:
  explicit BagEmbedder(size_t dim = 1024) : dim_(dim) {
    if (dim == 0) throw MetricsError("embedding dimension must be positive");
  }

  std::string id() const override { return "bag-fnv1a-" + std::to_string(dim_); }
  size_t dim() const override { return dim_; }

  size_t bucket(const std::string& token) const { return fnv1a64(token) % dim_; }

  std::vector<double> embed(const std::string& s) override {
    std::vector<double> v(dim_, 0.0);
    static const Lexicon empty;
    for (const auto& t : pipeline_tokens(s, TokenPipeline::raw(), empty)) v[bucket(t)] += 1.0;
    return v;
  }

 private:
  size_t dim_;
};

inline std::unique_ptr<Embedder> bag_embedder(size_t dim = 1024) {
  return std::make_unique<BagEmbedder>(dim);
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw MetricsError("cosine of vectors with different dimensions");
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

/// Cosine between the embeddings of the comma-joined lists. Both empty
/// gives 1 and exactly one empty gives 0, without calling the embedder.
inline double semantic_similarity(const std::vector<std::string>& gt,
                                  const std::vector<std::string>& pred, Embedder& e) {
  if (gt.empty() && pred.empty()) return 1.0;
  if (gt.empty() || pred.empty()) return 0.0;
  auto a = text::join(gt, ", ");
  auto b = text::join(pred, ", ");
  auto va = e.embed(a);
  auto vb = e.embed(b);
  bool za = std::all_of(va.begin(), va.end(), [](double x) { return x == 0; });
  bool zb = std::all_of(vb.begin(), vb.end(), [](double x) { return x == 0; });
  if (za && zb) return a == b ? 1.0 : 0.0;
  return cosine(va, vb);
}

// ---------------------------------------------------------------------------
// Corpus evaluation

struct ComponentScore {
  double em = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double f1_pre = 0;
  double sm = 0;
};

using ComponentRow = std::array<ComponentScore, 7>;

struct CorpusEvaluation {
  std::map<std::string, ComponentRow> per_scenario;
  ComponentRow averages{};
  std::string embedder_id;
};

inline ComponentScore score_component(const std::vector<std::string>& gt,
                                      const std::vector<std::string>& pred, Embedder& e,
                                      const Lexicon& lex) {
  ComponentScore s;
  s.em = exact_match(gt, pred);
  auto raw = token_f1(gt, pred, TokenPipeline::raw(), lex);
  s.precision = raw.precision;
  s.recall = raw.recall;
  s.f1 = raw.f1;
  s.f1_pre = token_f1(gt, pred, TokenPipeline::preprocessed(), lex).f1;
  s.sm = semantic_similarity(gt, pred, e);
  return s;
}

/// Scores every scenario and component, then takes the unweighted mean over
/// scenarios per component. The two maps must cover the same scenario ids.
inline CorpusEvaluation evaluate_corpus(const std::map<std::string, UCComponents>& gts,
                                        const std::map<std::string, UCComponents>& preds,
                                        Embedder& e,
                                        const Lexicon& lex = Lexicon::bundled()) {
  std::vector<std::string> only_gt;
  std::vector<std::string> only_pred;
  for (const auto& [id, c] : gts) {
    if (!preds.count(id)) only_gt.push_back(id);
  }
  for (const auto& [id, c] : preds) {
    if (!gts.count(id)) only_pred.push_back(id);
  }
  if (!only_gt.empty() || !only_pred.empty()) {
    throw MetricsError("scenario id sets differ; missing predictions: [" + text::join(only_gt, ", ") +
                       "], predictions without ground truth: [" + text::join(only_pred, ", ") + "]");
  }
  CorpusEvaluation out;
  out.embedder_id = e.id();
  for (const auto& [id, gt] : gts) {
    const auto& pred = preds.at(id);
    auto& row = out.per_scenario[id];
    for (size_t k = 0; k < kAllComponents.size(); ++k) {
      row[k] = score_component(gt[kAllComponents[k]], pred[kAllComponents[k]], e, lex);
    }
  }
  if (!out.per_scenario.empty()) {
    double n = static_cast<double>(out.per_scenario.size());
    for (const auto& [id, row] : out.per_scenario) {
      for (size_t k = 0; k < 7; ++k) {
        auto& a = out.averages[k];
        a.em += row[k].em / n;
        a.precision += row[k].precision / n;
        a.recall += row[k].recall / n;
        a.f1 += row[k].f1 / n;
        a.f1_pre += row[k].f1_pre / n;
        a.sm += row[k].sm / n;
      }
    }
  }
  return out;
}

}  // namespace uccx
