#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace nler {

// Object index sets are kept sorted and duplicate-free.
using ObjectSet = std::vector<std::size_t>;

// A granule as produced by neighborhood(); always contains its seed object.
using Granule = ObjectSet;

inline ObjectSet normalized_set(ObjectSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool set_contains(const ObjectSet& s, std::size_t x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline bool is_subset(const ObjectSet& sub, const ObjectSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline bool intersects(const ObjectSet& a, const ObjectSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return false;
}

inline std::size_t intersection_size(const ObjectSet& a, const ObjectSet& b) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) { ++count; ++i; ++j; }
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return count;
}

inline ObjectSet set_difference(const ObjectSet& a, const ObjectSet& b) {
  ObjectSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace nler
