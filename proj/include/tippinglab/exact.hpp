#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "tippinglab/graph.hpp"
#include "tippinglab/kuratowski.hpp"
#include "tippinglab/recognizers.hpp"

namespace tippinglab {

using ExactInteger = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

/// C(a, b); zero when b > a.
ExactInteger binomial(std::int64_t a, std::int64_t b);

/// Moon's count of labeled forests with n vertices and k trees:
///
///   f(n,k) = C(n,k) * sum_{i=0..k} (-1/2)^i (k+i) i! C(k,i) C(n-k,i) n^(n-k-i-1)
///
/// evaluated in exact rational arithmetic. Requires 1 <= k <= n.
ExactInteger labeled_forest_count(std::int64_t n, std::int64_t k);

/// Probability that a uniform G(n, m) graph is a forest:
/// f(n, n-m) / C(C(n,2), m) for m < n, and 0 for m >= n.
ExactRational acyclic_probability(std::int64_t n, std::int64_t m);

/// Decimal rendering rounded half-up to `significant` significant digits,
/// e.g. 4/5 -> "0.8", 1/3 -> "0.333333333333333". Requires value >= 0.
std::string to_decimal_string(const ExactRational& value, int significant = 15);

inline constexpr std::int64_t kDefaultEnumerationBudget = 10'000'000;

/// Visits every labeled simple graph with n vertices and m edges exactly
/// once, in lexicographic order of their sorted pair-index sets. Returns the
/// number visited. Throws BudgetExceeded when C(C(n,2), m) > budget.
std::int64_t enumerate_graphs(Vertex n, std::int64_t m, const std::function<void(const Graph&)>& visitor,
                              std::int64_t budget = kDefaultEnumerationBudget);

/// Exact fraction of (n, m)-graphs satisfying `predicate`, by enumeration.
ExactRational count_property_exact(Vertex n, std::int64_t m, const std::function<bool(const Graph&)>& predicate,
                                   std::int64_t budget = kDefaultEnumerationBudget);

/// Same with the library recognizer for `p`; near-planarity is evaluated
/// without the small-graph fast path.
ExactRational count_property_exact(Vertex n, std::int64_t m, Property p,
                                   std::int64_t budget = kDefaultEnumerationBudget);

}  // namespace tippinglab
