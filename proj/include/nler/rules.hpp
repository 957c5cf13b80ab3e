#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "nler/feature_vector.hpp"
#include "nler/info_system.hpp"
#include "nler/roughset.hpp"
#include "nler/util.hpp"

namespace nler {

// Closed interval condition over one attribute; always within [0, 1].
struct Condition {
  std::string attribute;
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool operator==(const Condition&) const = default;
};

struct Rule {
  std::vector<Condition> conditions; // at most one per attribute, in table attribute order
  Label label = Label::Positive;
  std::size_t strength = 0;    // covered training objects whose label matches
  std::size_t specificity = 0; // condition count

  bool operator==(const Rule&) const = default;
};

struct Covering {
  std::vector<std::string> attributes; // in table attribute order
  bool consistent = false;
};

struct RuleSet {
  std::vector<Rule> rules;
  NeighborhoodParams params;
  Covering covering;
};

inline bool rule_covers(const Rule& rule, const FeatureVector& features) {
  for (const auto& cond : rule.conditions)
    if (!cond.contains(features.at(cond.attribute))) return false;
  return true;
}

namespace detail {

struct ResolvedRule {
  std::vector<std::size_t> attrs;
  const Rule* rule;
};

inline ResolvedRule resolve(const Rule& rule, const InformationSystem& sys) {
  ResolvedRule r{{}, &rule};
  r.attrs.reserve(rule.conditions.size());
  for (const auto& cond : rule.conditions) r.attrs.push_back(sys.attribute_index(cond.attribute));
  return r;
}

inline bool covers_row(const ResolvedRule& r, const InformationSystem& sys, std::size_t obj) {
  for (std::size_t i = 0; i < r.attrs.size(); ++i)
    if (!r.rule->conditions[i].contains(sys.value(obj, r.attrs[i]))) return false;
  return true;
}

// A rule is consistent when it covers no object of the opposite label.
inline bool rule_consistent(const Rule& rule, const DecisionTable& table) {
  ResolvedRule r = resolve(rule, table.system);
  for (std::size_t obj = 0; obj < table.system.size(); ++obj)
    if (table.labels[obj] != rule.label && covers_row(r, table.system, obj)) return false;
  return true;
}

inline std::size_t rule_strength(const Rule& rule, const DecisionTable& table) {
  ResolvedRule r = resolve(rule, table.system);
  std::size_t count = 0;
  for (std::size_t obj = 0; obj < table.system.size(); ++obj)
    if (table.labels[obj] == rule.label && covers_row(r, table.system, obj)) ++count;
  return count;
}

// Count of objects whose neighborhood over `attrs` is decision-pure.
inline std::size_t pure_object_count(const DecisionTable& table,
                                     const std::vector<std::size_t>& attrs, Metric metric,
                                     double radius) {
  const auto& sys = table.system;
  std::size_t pure = 0;
  for (std::size_t x = 0; x < sys.size(); ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < sys.size() && ok; ++y)
      if (table.labels[y] != table.labels[x] &&
          distance_over(sys, x, y, attrs, metric) <= radius)
        ok = false;
    if (ok) ++pure;
  }
  return pure;
}

} // namespace detail

// A* <= D* over neighborhood granules: every object's neighborhood over
// `attrs` must be decision-pure. An empty attribute set granulates into the
// whole universe, so it is consistent only for a decision-pure table.
inline bool is_consistent(const DecisionTable& table, const std::vector<std::string>& attrs,
                          const NeighborhoodParams& params) {
  if (attrs.empty()) return table.decision_pure();
  std::vector<std::size_t> idx;
  idx.reserve(attrs.size());
  for (const auto& name : attrs) idx.push_back(table.system.attribute_index(name));
  return detail::pure_object_count(table, idx, params.metric, params.radius) ==
         table.system.size();
}

// Greedy forward selection followed by a backward redundancy pass. When even
// the full attribute set cannot separate the decisions, the full set is
// returned flagged inconsistent and induction falls back to certain rules.
inline Covering find_global_covering(const DecisionTable& table,
                                     const NeighborhoodParams& params) {
  const auto& sys = table.system;
  if (sys.attribute_count() == 0) fail("argument", "table has no attributes");
  if (table.decision_pure()) return Covering{{}, true};

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> remaining(sys.attribute_count());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  auto consistent_over = [&](const std::vector<std::size_t>& attrs) {
    return detail::pure_object_count(table, attrs, params.metric, params.radius) == sys.size();
  };

  bool consistent = false;
  while (!consistent && !remaining.empty()) {
    std::size_t best_attr = 0, best_pos = 0, best_pure = 0;
    bool first = true;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      std::vector<std::size_t> attempt = chosen;
      attempt.push_back(remaining[pos]);
      std::sort(attempt.begin(), attempt.end());
      std::size_t pure = detail::pure_object_count(table, attempt, params.metric, params.radius);
      if (first || pure > best_pure) {
        best_pure = pure;
        best_attr = remaining[pos];
        best_pos = pos;
        first = false;
      }
    }
    chosen.push_back(best_attr);
    std::sort(chosen.begin(), chosen.end());
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    consistent = consistent_over(chosen);
  }

  if (consistent) {
    // Backward pass: drop attributes whose removal keeps consistency.
    for (std::size_t i = 0; i < chosen.size();) {
      std::vector<std::size_t> attempt = chosen;
      attempt.erase(attempt.begin() + static_cast<std::ptrdiff_t>(i));
      if (consistent_over(attempt)) chosen = std::move(attempt);
      else ++i;
    }
  }

  Covering covering;
  covering.consistent = consistent;
  for (std::size_t a : chosen) covering.attributes.push_back(sys.attribute_names()[a]);
  return covering;
}

// Drops conditions one at a time in ascending attribute order, keeping a drop
// only when the weakened rule still covers no opposite-label object; repeated
// until a full pass makes no drop, so the result is drop-minimal.
inline Rule reduce_rule(Rule rule, const DecisionTable& table) {
  bool dropped = true;
  while (dropped && !rule.conditions.empty()) {
    dropped = false;
    for (std::size_t i = 0; i < rule.conditions.size();) {
      Rule attempt = rule;
      attempt.conditions.erase(attempt.conditions.begin() + static_cast<std::ptrdiff_t>(i));
      if (detail::rule_consistent(attempt, table)) {
        rule = std::move(attempt);
        dropped = true;
      } else {
        ++i;
      }
    }
  }
  rule.specificity = rule.conditions.size();
  return rule;
}

namespace detail {

// Seed conditions are the per-attribute windows [f(x,a)-δ, f(x,a)+δ] ∩ [0,1].
// For p < ∞ that box strictly contains the p-ball, so it can reach
// opposite-label objects even though the seed lies in a lower approximation;
// tighten the widest offending side toward the seed value until consistent.
// The seed itself always stays covered, and a point-interval rule from a
// lower-approximation object is always consistent, so this terminates.
inline void repair_rule(Rule& rule, const DecisionTable& table, std::size_t seed) {
  const auto& sys = table.system;
  while (true) {
    ResolvedRule r = resolve(rule, sys);
    std::size_t offender = sys.size();
    for (std::size_t obj = 0; obj < sys.size(); ++obj) {
      if (table.labels[obj] != rule.label && covers_row(r, sys, obj)) {
        offender = obj;
        break;
      }
    }
    if (offender == sys.size()) return;

    std::size_t best = 0;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < r.attrs.size(); ++i) {
      double gap = std::fabs(sys.value(offender, r.attrs[i]) - sys.value(seed, r.attrs[i]));
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    Condition& cond = rule.conditions[best];
    double sv = sys.value(seed, r.attrs[best]);
    double ov = sys.value(offender, r.attrs[best]);
    if (ov > sv) {
      double hi = sv + (ov - sv) / 2.0;
      cond.hi = hi < ov ? hi : sv; // guard against midpoint rounding up to ov
    } else {
      double lo = ov + (sv - ov) / 2.0;
      cond.lo = lo > ov ? lo : sv;
    }
  }
}

} // namespace detail

// Certain-rule generation: one seed rule per object in the lower
// approximation of its class over the covering, reduced and deduplicated.
inline RuleSet induce_rules(const DecisionTable& table, const Covering& covering,
                            const NeighborhoodParams& params) {
  const auto& sys = table.system;
  RuleSet out;
  out.params = params;
  out.covering = covering;

  if (covering.attributes.empty()) {
    // Degenerate covering: only emitted for decision-pure tables.
    if (sys.size() > 0 && table.decision_pure()) {
      Rule rule;
      rule.label = table.labels[0];
      rule.strength = sys.size();
      rule.specificity = 0;
      out.rules.push_back(std::move(rule));
    }
    return out;
  }

  NeighborhoodParams granulation = params;
  granulation.attributes = covering.attributes;
  std::vector<std::size_t> cov_idx;
  for (const auto& name : covering.attributes) cov_idx.push_back(sys.attribute_index(name));

  std::set<std::string> seen;
  for (Label label : {Label::Positive, Label::Negative}) {
    ObjectSet members = table.members_of(label);
    if (members.empty()) continue;
    ObjectSet seeds = lower_approximation(sys, members, granulation);
    for (std::size_t x : seeds) {
      Rule rule;
      rule.label = label;
      for (std::size_t a : cov_idx) {
        double v = sys.value(x, a);
        rule.conditions.push_back(Condition{sys.attribute_names()[a],
                                            std::max(0.0, v - params.radius),
                                            std::min(1.0, v + params.radius)});
      }
      detail::repair_rule(rule, table, x);
      rule = reduce_rule(std::move(rule), table);
      rule.strength = detail::rule_strength(rule, table);

      std::string key = to_string(rule.label);
      for (const auto& cond : rule.conditions)
        key += '|' + cond.attribute + ':' + format_double(cond.lo) + ':' + format_double(cond.hi);
      if (seen.insert(std::move(key)).second) out.rules.push_back(std::move(rule));
    }
  }
  return out;
}

// LERS-style strength * specificity voting with partial matching when no rule
// fully matches. Zero-condition rules vote with specificity 1.
inline double score(const RuleSet& ruleset, const FeatureVector& features) {
  double full = 0.0, partial = 0.0;
  bool any_full = false;
  for (const auto& rule : ruleset.rules) {
    std::size_t satisfied = 0;
    for (const auto& cond : rule.conditions)
      if (cond.contains(features.at(cond.attribute))) ++satisfied;
    double sign = rule.label == Label::Positive ? 1.0 : -1.0;
    double vote_spec = rule.conditions.empty() ? 1.0 : static_cast<double>(rule.specificity);
    if (satisfied == rule.conditions.size()) {
      any_full = true;
      full += sign * static_cast<double>(rule.strength) * vote_spec;
    }
    double factor = rule.conditions.empty()
                        ? 1.0
                        : static_cast<double>(satisfied) / static_cast<double>(rule.conditions.size());
    partial += factor * sign * static_cast<double>(rule.strength) * vote_spec;
  }
  return any_full ? full : partial;
}

// One rule per line, bit-exact for round-tripping:
//   (a in [0,0.2]) & (b in [0.1,0.5]) => POSITIVE | strength=7 specificity=2
//   (TRUE) => NEGATIVE | strength=3 specificity=0
inline std::string format_rule(const Rule& rule) {
  std::string out;
  if (rule.conditions.empty()) {
    out = "(TRUE)";
  } else {
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
      if (i) out += " & ";
      const auto& c = rule.conditions[i];
      out += '(' + c.attribute + " in [" + format_double(c.lo) + ',' + format_double(c.hi) + "])";
    }
  }
  out += " => ";
  out += to_string(rule.label);
  out += " | strength=" + std::to_string(rule.strength) +
         " specificity=" + std::to_string(rule.specificity);
  return out;
}

inline Rule parse_rule(std::string_view line) {
  auto bad = [&]() -> void { fail("model", "malformed rule line '" + std::string(line) + "'"); };
  Rule rule;
  std::size_t arrow = line.find(" => ");
  if (arrow == std::string_view::npos) bad();
  std::string_view lhs = line.substr(0, arrow);
  std::string_view rhs = line.substr(arrow + 4);

  if (lhs != "(TRUE)") {
    std::size_t pos = 0;
    while (pos < lhs.size()) {
      if (lhs[pos] != '(') bad();
      std::size_t close = lhs.find(']', pos);
      if (close == std::string_view::npos || close + 1 >= lhs.size() || lhs[close + 1] != ')') bad();
      std::string_view body = lhs.substr(pos + 1, close - pos); // name in [lo,hi]
      std::size_t in_pos = body.find(" in [");
      std::size_t comma = body.find(',', in_pos);
      if (in_pos == std::string_view::npos || comma == std::string_view::npos) bad();
      Condition cond;
      cond.attribute = std::string(body.substr(0, in_pos));
      cond.lo = parse_double(body.substr(in_pos + 5, comma - in_pos - 5), "model");
      cond.hi = parse_double(body.substr(comma + 1, body.size() - comma - 2), "model");
      rule.conditions.push_back(std::move(cond));
      pos = close + 2;
      if (pos < lhs.size()) {
        if (lhs.substr(pos, 3) != " & ") bad();
        pos += 3;
      }
    }
  }

  std::size_t bar = rhs.find(" | ");
  if (bar == std::string_view::npos) bad();
  rule.label = parse_label(rhs.substr(0, bar), "model");
  std::string_view meta = rhs.substr(bar + 3);
  std::size_t sp = meta.find(' ');
  if (sp == std::string_view::npos || meta.substr(0, 9) != "strength=" ||
      meta.substr(sp + 1, 12) != "specificity=")
    bad();
  rule.strength = static_cast<std::size_t>(parse_double(meta.substr(9, sp - 9), "model"));
  rule.specificity = static_cast<std::size_t>(parse_double(meta.substr(sp + 13), "model"));
  if (rule.specificity != rule.conditions.size())
    fail("model", "rule specificity does not match condition count");
  return rule;
}

} // namespace nler
