#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nler/error.hpp"

namespace nler {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

using TokenList = std::vector<std::string>;

namespace detail {

// Counting units keyed by a separator-joined string; '\x1f' cannot occur in
// tokens produced by the shared tokenizer.
using UnitCounts = std::map<std::string, long>;

inline void add_ngrams(UnitCounts& counts, const TokenList& tokens, std::size_t n) {
  if (tokens.size() < n || n == 0) return;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
}

inline void add_su_units(UnitCounts& counts, const TokenList& tokens, std::size_t window) {
  for (const auto& t : tokens) ++counts["u\x1f" + t];
  for (std::size_t i = 0; i < tokens.size(); ++i)
    for (std::size_t j = i + 1; j < tokens.size() && j - i <= window; ++j)
      ++counts["s\x1f" + tokens[i] + '\x1f' + tokens[j]];
}

inline long total(const UnitCounts& counts) {
  long sum = 0;
  for (const auto& [key, c] : counts) sum += c;
  return sum;
}

// Clipped overlap: each candidate unit is credited at most its multiplicity
// in the reference.
inline long clipped_overlap(const UnitCounts& cand, const UnitCounts& ref) {
  long overlap = 0;
  for (const auto& [key, c] : cand) {
    auto it = ref.find(key);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return overlap;
}

inline RougeScore make_score(long overlap, long cand_total, long ref_total) {
  RougeScore s;
  s.precision = cand_total > 0 ? static_cast<double>(overlap) / static_cast<double>(cand_total) : 0.0;
  s.recall = ref_total > 0 ? static_cast<double>(overlap) / static_cast<double>(ref_total) : 0.0;
  s.f1 = (s.precision + s.recall) > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

inline void check_references(const std::vector<TokenList>& references) {
  if (references.empty()) fail("argument", "ROUGE needs at least one reference");
}

// Multi-reference aggregation is best-match by recall; the first reference
// wins ties.
template <typename PerReference>
RougeScore best_by_recall(const std::vector<TokenList>& references, PerReference per_ref) {
  check_references(references);
  RougeScore best = per_ref(references.front());
  for (std::size_t i = 1; i < references.size(); ++i) {
    RougeScore s = per_ref(references[i]);
    if (s.recall > best.recall) best = s;
  }
  return best;
}

} // namespace detail

inline RougeScore rouge_n(const TokenList& candidate, const std::vector<TokenList>& references,
                          std::size_t n) {
  if (n < 1) fail("argument", "ROUGE-N needs n >= 1");
  detail::UnitCounts cand;
  detail::add_ngrams(cand, candidate, n);
  long cand_total = detail::total(cand);
  return detail::best_by_recall(references, [&](const TokenList& ref) {
    detail::UnitCounts rc;
    detail::add_ngrams(rc, ref, n);
    return detail::make_score(detail::clipped_overlap(cand, rc), cand_total, detail::total(rc));
  });
}

inline RougeScore rouge_l(const TokenList& candidate, const std::vector<TokenList>& references) {
  return detail::best_by_recall(references, [&](const TokenList& ref) {
    // Two-row LCS; tests check it against the full-table textbook oracle.
    std::vector<long> prev(ref.size() + 1, 0), cur(ref.size() + 1, 0);
    for (std::size_t i = 1; i <= candidate.size(); ++i) {
      for (std::size_t j = 1; j <= ref.size(); ++j) {
        if (candidate[i - 1] == ref[j - 1]) cur[j] = prev[j - 1] + 1;
        else cur[j] = std::max(prev[j], cur[j - 1]);
      }
      std::swap(prev, cur);
    }
    long lcs = prev[ref.size()];
    return detail::make_score(lcs, static_cast<long>(candidate.size()),
                              static_cast<long>(ref.size()));
  });
}

// Unigrams plus ordered skip-bigrams at in-sequence distance <= skip_window
// (the SU4 convention by default).
inline RougeScore rouge_su(const TokenList& candidate, const std::vector<TokenList>& references,
                           std::size_t skip_window = 4) {
  if (skip_window < 1) fail("argument", "ROUGE-SU needs skip_window >= 1");
  detail::UnitCounts cand;
  detail::add_su_units(cand, candidate, skip_window);
  long cand_total = detail::total(cand);
  return detail::best_by_recall(references, [&](const TokenList& ref) {
    detail::UnitCounts rc;
    detail::add_su_units(rc, ref, skip_window);
    return detail::make_score(detail::clipped_overlap(cand, rc), cand_total, detail::total(rc));
  });
}

} // namespace nler
