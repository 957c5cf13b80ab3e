#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nler/error.hpp"

namespace nler {

// Ordered name -> value association with a fixed schema per model.
struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;

  bool has(std::string_view name) const {
    for (const auto& n : names)
      if (n == name) return true;
    return false;
  }

  double at(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return values[i];
    fail("argument", "feature vector has no attribute '" + std::string(name) + "'");
  }
};

} // namespace nler
