#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nler/feature_vector.hpp"
#include "nler/text.hpp"

namespace nler {

inline const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> names = {"position",        "rel_length", "tf_isf",
                                                 "centroid_sim",    "numeric_density",
                                                 "title_overlap"};
  return names;
}

// Cluster-level statistics shared by all sentences of one cluster.
struct ClusterStats {
  std::size_t document_count = 0;
  std::size_t max_word_count = 0;
  std::map<std::string, std::size_t> doc_frequency; // non-stopword tokens
  std::map<std::string, double> centroid;           // summed tf over all sentences, stopwords removed
  double centroid_norm = 0.0;
  double tf_isf_min = 0.0;
  double tf_isf_max = 0.0;
  std::map<std::string, std::set<std::string>> title_tokens; // doc id -> first-sentence token set
};

namespace detail {

inline std::map<std::string, std::size_t> term_counts(const std::vector<std::string>& tokens,
                                                      bool drop_stopwords) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : tokens)
    if (!drop_stopwords || !is_stopword(t)) ++counts[t];
  return counts;
}

// Mean over the sentence's non-stopword token occurrences of
// tf(token) * log(1 + D / df(token)); raw value before min-max scaling.
inline double raw_tf_isf(const SentenceRecord& sentence, const ClusterStats& stats) {
  auto counts = term_counts(sentence.tokens, true);
  double sum = 0.0;
  std::size_t occurrences = 0;
  for (const auto& [token, tf] : counts) {
    occurrences += tf;
    auto it = stats.doc_frequency.find(token);
    if (it == stats.doc_frequency.end() || it->second == 0) continue;
    double isf = std::log(1.0 + static_cast<double>(stats.document_count) /
                                    static_cast<double>(it->second));
    // each of the tf occurrences contributes tf * isf
    sum += static_cast<double>(tf) * static_cast<double>(tf) * isf;
  }
  return occurrences > 0 ? sum / static_cast<double>(occurrences) : 0.0;
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

} // namespace detail

inline ClusterStats compute_cluster_stats(const Cluster& cluster) {
  ClusterStats stats;
  stats.document_count = cluster.documents.size();
  for (const auto& doc : cluster.documents) {
    std::set<std::string> seen;
    for (const auto& sentence : doc.sentences) {
      stats.max_word_count = std::max(stats.max_word_count, sentence.word_count);
      for (const auto& token : sentence.tokens) {
        if (is_stopword(token)) continue;
        stats.centroid[token] += 1.0;
        seen.insert(token);
      }
    }
    for (const auto& token : seen) ++stats.doc_frequency[token];
    if (!doc.sentences.empty()) {
      auto& title = stats.title_tokens[doc.id];
      for (const auto& token : doc.sentences.front().tokens) title.insert(token);
    }
  }
  double norm2 = 0.0;
  for (const auto& [token, weight] : stats.centroid) norm2 += weight * weight;
  stats.centroid_norm = std::sqrt(norm2);

  bool first = true;
  for (const auto& doc : cluster.documents) {
    for (const auto& sentence : doc.sentences) {
      double raw = detail::raw_tf_isf(sentence, stats);
      if (first || raw < stats.tf_isf_min) stats.tf_isf_min = raw;
      if (first || raw > stats.tf_isf_max) stats.tf_isf_max = raw;
      first = false;
    }
  }
  return stats;
}

inline FeatureVector extract_features(const SentenceRecord& sentence,
                                      const ClusterStats& stats) {
  FeatureVector fv;
  fv.names = feature_schema();
  fv.values.resize(fv.names.size(), 0.0);

  fv.values[0] = 1.0 / (1.0 + static_cast<double>(sentence.position));

  fv.values[1] = stats.max_word_count > 0
                     ? static_cast<double>(sentence.word_count) /
                           static_cast<double>(stats.max_word_count)
                     : 0.0;

  double raw = detail::raw_tf_isf(sentence, stats);
  double span = stats.tf_isf_max - stats.tf_isf_min;
  fv.values[2] = span > 0.0 ? (raw - stats.tf_isf_min) / span : 0.5;

  double dot = 0.0, norm2 = 0.0;
  for (const auto& [token, tf] : detail::term_counts(sentence.tokens, true)) {
    auto it = stats.centroid.find(token);
    if (it != stats.centroid.end()) dot += static_cast<double>(tf) * it->second;
    norm2 += static_cast<double>(tf) * static_cast<double>(tf);
  }
  double denom = std::sqrt(norm2) * stats.centroid_norm;
  fv.values[3] = denom > 0.0 ? dot / denom : 0.0;

  std::size_t numerals = 0;
  for (const auto& token : sentence.tokens)
    if (is_numeral_token(token)) ++numerals;
  fv.values[4] = sentence.word_count > 0 ? static_cast<double>(numerals) /
                                               static_cast<double>(sentence.word_count)
                                         : 0.0;

  auto title_it = stats.title_tokens.find(sentence.doc_id);
  if (title_it != stats.title_tokens.end() && !title_it->second.empty()) {
    const auto& title = title_it->second;
    std::set<std::string> distinct(sentence.tokens.begin(), sentence.tokens.end());
    std::size_t overlap = 0;
    for (const auto& token : distinct)
      if (title.count(token)) ++overlap;
    fv.values[5] = static_cast<double>(overlap) / static_cast<double>(title.size());
  } else {
    fv.values[5] = 0.0;
  }

  for (double& v : fv.values) v = detail::clamp01(v);
  return fv;
}

inline FeatureVector extract_features(const SentenceRecord& sentence, const Cluster& cluster) {
  return extract_features(sentence, compute_cluster_stats(cluster));
}

// All sentences of a cluster in document order with their feature vectors.
struct ClusterFeatureTable {
  std::vector<const SentenceRecord*> sentences;
  std::vector<FeatureVector> features;
};

inline ClusterFeatureTable extract_cluster_features(const Cluster& cluster) {
  ClusterFeatureTable table;
  ClusterStats stats = compute_cluster_stats(cluster);
  for (const auto& doc : cluster.documents) {
    for (const auto& sentence : doc.sentences) {
      table.sentences.push_back(&sentence);
      table.features.push_back(extract_features(sentence, stats));
    }
  }
  return table;
}

} // namespace nler
