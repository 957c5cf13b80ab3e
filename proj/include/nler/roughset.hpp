#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "nler/info_system.hpp"
#include "nler/object_set.hpp"

namespace nler {

inline std::vector<std::size_t> resolve_attributes(const InformationSystem& sys,
                                                   const NeighborhoodParams& params) {
  std::vector<std::size_t> idx;
  if (params.attributes.empty()) {
    idx.resize(sys.attribute_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }
  idx.reserve(params.attributes.size());
  for (const auto& name : params.attributes) idx.push_back(sys.attribute_index(name));
  return idx;
}

namespace detail {

inline double distance_over(const InformationSystem& sys, std::size_t x, std::size_t y,
                            const std::vector<std::size_t>& attrs, Metric metric) {
  double acc = 0.0;
  switch (metric) {
    case Metric::L1:
      for (std::size_t a : attrs) acc += std::fabs(sys.value(x, a) - sys.value(y, a));
      return acc;
    case Metric::L2:
      for (std::size_t a : attrs) {
        double d = sys.value(x, a) - sys.value(y, a);
        acc += d * d;
      }
      return std::sqrt(acc);
    default:
      for (std::size_t a : attrs) {
        double d = std::fabs(sys.value(x, a) - sys.value(y, a));
        if (d > acc) acc = d;
      }
      return acc;
  }
}

// Dense O(n) scan; boundary membership uses exact <= on computed doubles.
inline Granule neighborhood_over(const InformationSystem& sys, std::size_t x,
                                 const std::vector<std::size_t>& attrs, Metric metric,
                                 double radius) {
  Granule members;
  for (std::size_t y = 0; y < sys.size(); ++y)
    if (distance_over(sys, x, y, attrs, metric) <= radius) members.push_back(y);
  return members;
}

inline void check_params(const NeighborhoodParams& params) {
  if (!(params.radius >= 0.0))
    fail("argument", "neighborhood radius must be >= 0");
}

inline ObjectSet checked_target(const InformationSystem& sys, const ObjectSet& target) {
  ObjectSet t = normalized_set(target);
  if (!t.empty() && t.back() >= sys.size())
    fail("argument", "target contains object index out of range");
  return t;
}

} // namespace detail

inline double minkowski_distance(const InformationSystem& sys, std::size_t x, std::size_t y,
                                 const NeighborhoodParams& params) {
  sys.check_object(x);
  sys.check_object(y);
  detail::check_params(params);
  return detail::distance_over(sys, x, y, resolve_attributes(sys, params), params.metric);
}

inline Granule neighborhood(const InformationSystem& sys, std::size_t x,
                            const NeighborhoodParams& params) {
  sys.check_object(x);
  detail::check_params(params);
  return detail::neighborhood_over(sys, x, resolve_attributes(sys, params), params.metric,
                                   params.radius);
}

inline ObjectSet lower_approximation(const InformationSystem& sys, const ObjectSet& target,
                                     const NeighborhoodParams& params) {
  detail::check_params(params);
  ObjectSet t = detail::checked_target(sys, target);
  auto attrs = resolve_attributes(sys, params);
  ObjectSet out;
  for (std::size_t x = 0; x < sys.size(); ++x)
    if (is_subset(detail::neighborhood_over(sys, x, attrs, params.metric, params.radius), t))
      out.push_back(x);
  return out;
}

inline ObjectSet upper_approximation(const InformationSystem& sys, const ObjectSet& target,
                                     const NeighborhoodParams& params) {
  detail::check_params(params);
  ObjectSet t = detail::checked_target(sys, target);
  auto attrs = resolve_attributes(sys, params);
  ObjectSet out;
  for (std::size_t x = 0; x < sys.size(); ++x)
    if (intersects(detail::neighborhood_over(sys, x, attrs, params.metric, params.radius), t))
      out.push_back(x);
  return out;
}

inline ObjectSet boundary_region(const InformationSystem& sys, const ObjectSet& target,
                                 const NeighborhoodParams& params) {
  return set_difference(upper_approximation(sys, target, params),
                        lower_approximation(sys, target, params));
}

inline ObjectSet negative_region(const InformationSystem& sys, const ObjectSet& target,
                                 const NeighborhoodParams& params) {
  return set_difference(sys.universe(), upper_approximation(sys, target, params));
}

// |target ∩ granule(x)| / |granule(x)|; the denominator is never zero because
// granules are reflexive.
inline double rough_membership(const InformationSystem& sys, std::size_t x,
                               const ObjectSet& target, const NeighborhoodParams& params) {
  sys.check_object(x);
  detail::check_params(params);
  ObjectSet t = detail::checked_target(sys, target);
  Granule g = detail::neighborhood_over(sys, x, resolve_attributes(sys, params),
                                        params.metric, params.radius);
  return static_cast<double>(intersection_size(g, t)) / static_cast<double>(g.size());
}

} // namespace nler
