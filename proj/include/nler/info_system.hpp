#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nler/error.hpp"
#include "nler/object_set.hpp"

namespace nler {

enum class Label : unsigned char { Negative = 0, Positive = 1 };

inline const char* to_string(Label label) {
  return label == Label::Positive ? "POSITIVE" : "NEGATIVE";
}

inline Label parse_label(std::string_view text, const char* category = "argument") {
  if (text == "POSITIVE") return Label::Positive;
  if (text == "NEGATIVE") return Label::Negative;
  fail(category, "invalid label '" + std::string(text) + "' (expected POSITIVE or NEGATIVE)");
}

// Minkowski exponent. Chebyshev is evaluated directly as a component-wise
// max, never as a large-p limit.
enum class Metric : unsigned char { L1, L2, Chebyshev };

inline const char* to_string(Metric m) {
  switch (m) {
    case Metric::L1: return "1";
    case Metric::L2: return "2";
    default: return "inf";
  }
}

inline Metric parse_metric(std::string_view text, const char* category = "argument") {
  if (text == "1") return Metric::L1;
  if (text == "2") return Metric::L2;
  if (text == "inf") return Metric::Chebyshev;
  fail(category, "invalid metric '" + std::string(text) + "' (expected 1, 2 or inf)");
}

// Radius and exponent of the granulation plus the attribute set the distance
// runs over; an empty attribute list means all attributes of the system.
struct NeighborhoodParams {
  Metric metric = Metric::L2;
  double radius = 0.2;
  std::vector<std::string> attributes;
};

// A rectangular numeric information system. Objects are dense indices
// 0..size()-1; every value must be finite and inside [0, 1].
class InformationSystem {
public:
  InformationSystem() = default;

  InformationSystem(std::vector<std::string> attributes,
                    std::vector<std::vector<double>> rows)
      : attributes_(std::move(attributes)) {
    if (attributes_.empty())
      fail("argument", "information system needs at least one attribute");
    for (std::size_t i = 0; i < attributes_.size(); ++i)
      for (std::size_t j = i + 1; j < attributes_.size(); ++j)
        if (attributes_[i] == attributes_[j])
          fail("argument", "duplicate attribute name '" + attributes_[i] + "'");
    values_.reserve(rows.size() * attributes_.size());
    for (const auto& row : rows) {
      if (row.size() != attributes_.size())
        fail("argument", "row width does not match attribute count");
      for (double v : row) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
          fail("argument", "value out of range [0,1]: " + std::to_string(v));
        values_.push_back(v);
      }
    }
    size_ = rows.size();
  }

  std::size_t size() const { return size_; }
  std::size_t attribute_count() const { return attributes_.size(); }
  const std::vector<std::string>& attribute_names() const { return attributes_; }

  std::size_t attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i)
      if (attributes_[i] == name) return i;
    fail("argument", "unknown attribute '" + std::string(name) + "'");
  }

  double value(std::size_t object, std::size_t attribute) const {
    return values_[object * attributes_.size() + attribute];
  }

  void check_object(std::size_t object) const {
    if (object >= size_)
      fail("argument", "object index " + std::to_string(object) + " out of range");
  }

  ObjectSet universe() const {
    ObjectSet all(size_);
    for (std::size_t i = 0; i < size_; ++i) all[i] = i;
    return all;
  }

private:
  std::vector<std::string> attributes_;
  std::vector<double> values_;
  std::size_t size_ = 0;
};

// An information system plus a binary decision label per object.
struct DecisionTable {
  InformationSystem system;
  std::vector<Label> labels;

  DecisionTable() = default;
  DecisionTable(InformationSystem sys, std::vector<Label> lbls)
      : system(std::move(sys)), labels(std::move(lbls)) {
    if (labels.size() != system.size())
      fail("argument", "decision labels must cover every object");
  }

  ObjectSet members_of(Label label) const {
    ObjectSet out;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) out.push_back(i);
    return out;
  }

  bool decision_pure() const {
    for (std::size_t i = 1; i < labels.size(); ++i)
      if (labels[i] != labels[0]) return false;
    return true;
  }
};

} // namespace nler
