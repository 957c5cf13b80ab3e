#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nler/corpus.hpp"
#include "nler/features.hpp"
#include "nler/rouge.hpp"
#include "nler/rules.hpp"
#include "nler/util.hpp"

namespace nler {

struct Model {
  RuleSet ruleset;
  NeighborhoodParams params;
  std::vector<std::string> feature_schema;
  double label_fraction = 0.2;
  std::string corpus_digest;
  std::string config_digest;
  std::string run_label; // e.g. Nbhd_0.2
};

struct ScoredSentence {
  const SentenceRecord* sentence = nullptr;
  double score = 0.0;
};

struct SummaryResult {
  std::string cluster_id;
  std::vector<ScoredSentence> selected; // rank order, scores non-increasing
  std::string text;
  std::size_t word_count = 0;
};

enum class PostProcessor : unsigned char { None, ClassicMembership, AggregateRankMeasure };

inline const char* to_string(PostProcessor p) {
  switch (p) {
    case PostProcessor::None: return "none";
    case PostProcessor::ClassicMembership: return "classic-membership";
    default: return "aggregate-rank-measure";
  }
}

inline PostProcessor parse_post_processor(std::string_view text,
                                          const char* category = "argument") {
  if (text == "none") return PostProcessor::None;
  if (text == "classic-membership") return PostProcessor::ClassicMembership;
  if (text == "aggregate-rank-measure") return PostProcessor::AggregateRankMeasure;
  fail(category, "invalid post-processor '" + std::string(text) +
                     "' (expected none, classic-membership or aggregate-rank-measure)");
}

enum class EmitOrder : unsigned char { Ranked, Original };

inline EmitOrder parse_emit_order(std::string_view text, const char* category = "argument") {
  if (text == "ranked") return EmitOrder::Ranked;
  if (text == "original") return EmitOrder::Original;
  fail(category, "invalid emit order '" + std::string(text) + "' (expected ranked or original)");
}

namespace detail {

inline bool rank_before(const ScoredSentence& a, const ScoredSentence& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.sentence->doc_id != b.sentence->doc_id) return a.sentence->doc_id < b.sentence->doc_id;
  return a.sentence->position < b.sentence->position;
}

inline std::vector<TokenList> gold_token_lists(const Cluster& cluster) {
  std::vector<TokenList> refs;
  refs.reserve(cluster.gold_summaries.size());
  for (const auto& text : cluster.gold_summaries) refs.push_back(tokenize(text));
  return refs;
}

// Byte offset just past the first `count` tokens of `text` under the shared
// tokenizer; used to truncate the budget-crossing sentence.
inline std::size_t token_prefix_end(std::string_view text, std::size_t count) {
  std::size_t seen = 0;
  bool in_token = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (ascii_alnum(text[i])) {
      in_token = true;
    } else if (in_token) {
      if (++seen == count) return i;
      in_token = false;
    }
  }
  if (in_token) ++seen;
  return text.size();
}

} // namespace detail

// ROUGE-1 recall labelling against the gold summaries: the top ceil(rho * n)
// sentences are POSITIVE, ties broken by (doc id, position). Labels come back
// in the cluster's flattened document order.
inline std::vector<Label> label_training(const Cluster& cluster, double label_fraction) {
  if (cluster.gold_summaries.empty())
    fail("label", "cluster '" + cluster.id + "' has no gold summaries");
  if (!(label_fraction > 0.0 && label_fraction < 1.0))
    fail("argument", "label fraction must lie in (0,1)");

  std::vector<TokenList> refs = detail::gold_token_lists(cluster);
  std::vector<ScoredSentence> ranked;
  for (const auto& doc : cluster.documents)
    for (const auto& sentence : doc.sentences)
      ranked.push_back({&sentence, rouge_n(sentence.tokens, refs, 1).recall});
  std::sort(ranked.begin(), ranked.end(), detail::rank_before);

  std::size_t n = ranked.size();
  auto positives = static_cast<std::size_t>(
      std::ceil(label_fraction * static_cast<double>(n)));
  positives = std::min(positives, n);

  std::vector<const SentenceRecord*> order;
  for (const auto& doc : cluster.documents)
    for (const auto& sentence : doc.sentences) order.push_back(&sentence);

  std::vector<Label> labels(n, Label::Negative);
  for (std::size_t i = 0; i < positives; ++i) {
    auto it = std::find(order.begin(), order.end(), ranked[i].sentence);
    labels[static_cast<std::size_t>(it - order.begin())] = Label::Positive;
  }
  return labels;
}

namespace detail {

inline std::string corpus_digest(const std::vector<Cluster>& clusters) {
  Fnv1a h;
  for (const auto& cluster : clusters) {
    h.update(cluster.id);
    h.update("\x1e");
    for (const auto& doc : cluster.documents) {
      h.update(doc.id);
      h.update("\x1e");
      for (const auto& s : doc.sentences) {
        h.update(s.text);
        h.update("\x1e");
      }
    }
    for (const auto& gold : cluster.gold_summaries) {
      h.update(gold);
      h.update("\x1e");
    }
  }
  return h.hex();
}

inline std::string config_digest(const NeighborhoodParams& params, double label_fraction) {
  Fnv1a h;
  h.update("radius=" + format_double(params.radius));
  h.update(";metric=");
  h.update(to_string(params.metric));
  h.update(";label_fraction=" + format_double(label_fraction));
  h.update(";labelling=per-cluster");
  return h.hex();
}

} // namespace detail

// Fig-style training pass: per-cluster features and labels pooled into one
// decision table, then global covering and certain-rule induction.
inline Model train(const std::vector<Cluster>& clusters, const NeighborhoodParams& params,
                   double label_fraction) {
  if (clusters.empty()) fail("train", "no training clusters");

  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
  for (const auto& cluster : clusters) {
    ClusterFeatureTable table = extract_cluster_features(cluster);
    std::vector<Label> cluster_labels = label_training(cluster, label_fraction);
    for (std::size_t i = 0; i < table.features.size(); ++i) {
      rows.push_back(table.features[i].values);
      labels.push_back(cluster_labels[i]);
    }
  }
  if (rows.empty()) fail("train", "training corpus has no sentences");

  DecisionTable table(InformationSystem(feature_schema(), std::move(rows)), std::move(labels));
  Covering covering = find_global_covering(table, params);

  Model model;
  model.ruleset = induce_rules(table, covering, params);
  model.params = params;
  model.feature_schema = feature_schema();
  model.label_fraction = label_fraction;
  model.corpus_digest = detail::corpus_digest(clusters);
  model.config_digest = detail::config_digest(params, label_fraction);
  model.run_label = "Nbhd_" + format_double(params.radius);
  return model;
}

// Rule-voting importance per sentence, ordered by descending score with
// (doc id, position) tie-break. Rejects schema mismatches outright.
inline std::vector<ScoredSentence> score_sentences(const Model& model,
                                                   const ClusterFeatureTable& table) {
  if (!table.features.empty() && table.features.front().names != model.feature_schema)
    fail("model", "feature schema mismatch between model and extracted features");
  std::vector<ScoredSentence> scored;
  scored.reserve(table.sentences.size());
  for (std::size_t i = 0; i < table.sentences.size(); ++i)
    scored.push_back({table.sentences[i], score(model.ruleset, table.features[i])});
  std::sort(scored.begin(), scored.end(), detail::rank_before);
  return scored;
}

inline std::vector<ScoredSentence> score_sentences(const Model& model, const Cluster& cluster) {
  return score_sentences(model, extract_cluster_features(cluster));
}

// Classical rough-membership post-processing: the target set is the
// positively scored sentences and each final score is the membership of the
// sentence's granule in that set over the cluster's feature table.
inline std::vector<ScoredSentence> post_process_membership(
    const std::vector<ScoredSentence>& scored, const ClusterFeatureTable& table,
    const NeighborhoodParams& params) {
  std::vector<std::vector<double>> rows;
  rows.reserve(table.features.size());
  for (const auto& fv : table.features) rows.push_back(fv.values);
  InformationSystem sys(table.features.empty() ? feature_schema()
                                               : table.features.front().names,
                        std::move(rows));

  ObjectSet target;
  for (const auto& item : scored) {
    if (item.score <= 0.0) continue;
    for (std::size_t i = 0; i < table.sentences.size(); ++i)
      if (table.sentences[i] == item.sentence) target.push_back(i);
  }
  target = normalized_set(target);

  std::vector<ScoredSentence> rescored;
  rescored.reserve(table.sentences.size());
  for (std::size_t i = 0; i < table.sentences.size(); ++i)
    rescored.push_back({table.sentences[i], rough_membership(sys, i, target, params)});
  std::sort(rescored.begin(), rescored.end(), detail::rank_before);
  return rescored;
}

// Concatenates sentences in rank order and cuts at the word budget; the
// sentence crossing the budget is truncated on a token boundary.
inline SummaryResult assemble_summary(std::string cluster_id,
                                      const std::vector<ScoredSentence>& scored,
                                      std::size_t word_budget,
                                      EmitOrder emit_order = EmitOrder::Ranked) {
  SummaryResult result;
  result.cluster_id = std::move(cluster_id);

  std::vector<std::pair<ScoredSentence, std::string>> picked; // with emitted text
  std::size_t used = 0;
  for (const auto& item : scored) {
    if (used >= word_budget) break;
    std::size_t cost = item.sentence->word_count;
    if (used + cost <= word_budget) {
      picked.emplace_back(item, item.sentence->text);
      used += cost;
    } else {
      std::size_t keep = word_budget - used;
      std::size_t cut = detail::token_prefix_end(item.sentence->text, keep);
      picked.emplace_back(item, trim(item.sentence->text.substr(0, cut)));
      used = word_budget;
      break;
    }
  }

  for (const auto& [item, text] : picked) result.selected.push_back(item);
  result.word_count = used;

  if (emit_order == EmitOrder::Original) {
    std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) {
      if (a.first.sentence->doc_id != b.first.sentence->doc_id)
        return a.first.sentence->doc_id < b.first.sentence->doc_id;
      return a.first.sentence->position < b.first.sentence->position;
    });
  }
  std::vector<std::string> parts;
  parts.reserve(picked.size());
  for (auto& [item, text] : picked)
    if (!text.empty()) parts.push_back(std::move(text));
  result.text = join(parts, " ");
  return result;
}

struct EvalOptions {
  std::size_t summary_words = 100;
  PostProcessor post = PostProcessor::None;
  EmitOrder emit_order = EmitOrder::Ranked;
  unsigned jobs = 1;
};

inline const std::vector<std::string>& rouge_metric_names() {
  static const std::vector<std::string> names = {"ROUGE-1", "ROUGE-2", "ROUGE-L", "ROUGE-SU"};
  return names;
}

struct ClusterEval {
  std::string cluster_id;
  SummaryResult summary;
  std::vector<RougeScore> scores; // parallel to rouge_metric_names()
};

struct EvalReport {
  std::vector<ClusterEval> clusters;
  std::vector<RougeScore> means;
};

inline SummaryResult summarize_cluster(const Model& model, const Cluster& cluster,
                                       const EvalOptions& options) {
  if (options.post == PostProcessor::AggregateRankMeasure)
    fail("notimpl",
         "post-processor 'aggregate-rank-measure' is not implemented; it is defined "
         "externally in 'Rough Set based Aggregate Rank Measure' (arXiv:2002.03259)");
  ClusterFeatureTable table = extract_cluster_features(cluster);
  std::vector<ScoredSentence> scored = score_sentences(model, table);
  if (options.post == PostProcessor::ClassicMembership)
    scored = post_process_membership(scored, table, model.params);
  return assemble_summary(cluster.id, scored, options.summary_words, options.emit_order);
}

// Per-cluster summaries scored with all four ROUGE variants. Cluster fan-out
// may run on several threads; results merge in cluster order regardless.
inline EvalReport evaluate(const Model& model, const std::vector<Cluster>& clusters,
                           const EvalOptions& options) {
  for (const auto& cluster : clusters)
    if (cluster.gold_summaries.empty())
      fail("ingest", "cluster '" + cluster.id + "' has no gold summaries");

  EvalReport report;
  report.clusters.resize(clusters.size());

  auto run_one = [&](std::size_t i) {
    const Cluster& cluster = clusters[i];
    ClusterEval eval;
    eval.cluster_id = cluster.id;
    eval.summary = summarize_cluster(model, cluster, options);
    TokenList cand = tokenize(eval.summary.text);
    std::vector<TokenList> refs = detail::gold_token_lists(cluster);
    eval.scores.push_back(rouge_n(cand, refs, 1));
    eval.scores.push_back(rouge_n(cand, refs, 2));
    eval.scores.push_back(rouge_l(cand, refs));
    eval.scores.push_back(rouge_su(cand, refs));
    report.clusters[i] = std::move(eval);
  };

  unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || clusters.size() <= 1) {
    for (std::size_t i = 0; i < clusters.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(clusters.size()));
    for (unsigned w = 0; w < count; ++w) {
      workers.emplace_back([&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= clusters.size()) return;
          run_one(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  report.means.resize(rouge_metric_names().size());
  if (!report.clusters.empty()) {
    for (std::size_t m = 0; m < report.means.size(); ++m) {
      RougeScore mean;
      for (const auto& eval : report.clusters) {
        mean.precision += eval.scores[m].precision;
        mean.recall += eval.scores[m].recall;
        mean.f1 += eval.scores[m].f1;
      }
      auto n = static_cast<double>(report.clusters.size());
      mean.precision /= n;
      mean.recall /= n;
      mean.f1 /= n;
      report.means[m] = mean;
    }
  }
  return report;
}

// TSV contract: cluster <TAB> metric <TAB> precision <TAB> recall <TAB> f1,
// one row per cluster per metric plus a MEAN row per metric; headers record
// the aggregation decisions.
inline std::string render_scores_tsv(const EvalReport& report, const EvalOptions& options) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  std::string out;
  out += "# nler rouge report v1\n";
  out += "# aggregation = multi-reference best-match by recall; MEAN = arithmetic mean over clusters\n";
  out += "# rouge_su_window = 4\n";
  out += "# convention = recall-primary (DUC); precision and f1 reported alongside\n";
  out += "# summary_words = " + std::to_string(options.summary_words) + "\n";
  out += std::string("# post = ") + to_string(options.post) + "\n";
  out += "cluster\tmetric\tprecision\trecall\tf1\n";
  for (const auto& eval : report.clusters) {
    for (std::size_t m = 0; m < eval.scores.size(); ++m) {
      const RougeScore& s = eval.scores[m];
      out += eval.cluster_id + '\t' + rouge_metric_names()[m] + '\t' + fmt(s.precision) + '\t' +
             fmt(s.recall) + '\t' + fmt(s.f1) + '\n';
    }
  }
  for (std::size_t m = 0; m < report.means.size(); ++m) {
    const RougeScore& s = report.means[m];
    out += "MEAN\t" + rouge_metric_names()[m] + '\t' + fmt(s.precision) + '\t' + fmt(s.recall) +
           '\t' + fmt(s.f1) + '\n';
  }
  return out;
}

} // namespace nler
