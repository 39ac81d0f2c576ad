#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tippinglab/graph.hpp"

namespace tippinglab {

enum class Property { acyclic, planar, outerplanar, nearplanar };

inline constexpr Property kAllProperties[] = {Property::acyclic, Property::planar,
                                              Property::outerplanar, Property::nearplanar};

class UnknownProperty : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string_view to_string(Property p);
/// Accepts "acyclic", "planar", "outerplanar", "nearplanar". Throws UnknownProperty.
Property parse_property(std::string_view tag);

/// Left-right planarity criterion on an arbitrary edge list over vertices
/// 0..n-1 (no loops, no parallel edges). Linear time. Components are
/// handled by the DFS forest, i.e. each component is tested on its own.
bool lr_planar(Vertex n, std::span<const Edge> edges);

bool is_acyclic(const Graph& g);

enum class ComponentStrategy {
    per_component,   // test the DFS forest directly
    make_connected,  // join components first, then test the connected graph
};

/// Graphs with more than 3n - 6 edges (n >= 3) are rejected without a test.
bool is_planar(const Graph& g, ComponentStrategy strategy = ComponentStrategy::per_component);

/// Apex reduction: g is outerplanar iff g plus a vertex adjacent to every
/// vertex is planar. More than 2n - 3 edges (n >= 2) short-circuits to false.
bool is_outerplanar(const Graph& g);

struct NearPlanarWitness {
    bool verdict = false;
    /// Present iff g is not planar and removing this edge makes it planar.
    std::optional<Edge> removed_edge;
};

/// Planar, or planar after deleting one edge. The witness is the first
/// such edge in sorted edge order.
NearPlanarWitness is_near_planar(const Graph& g);

/// Verdict only. With `small_graph_fast_path`, graphs with at most 11 edges
/// are accepted without testing (the smallest non-near-planar graph, K_{3,4},
/// has 12 edges).
bool near_planar_verdict(const Graph& g, bool small_graph_fast_path = true);

/// Evaluates one property; near-planarity uses the fast path.
bool holds(Property p, const Graph& g);

struct SignificantInterval {
    Property property;
    double lo = 0;
    double hi = 0;
};

/// The density range outside which the property is forced or impossible.
SignificantInterval significant_interval(Property p, std::int64_t n);

}  // namespace tippinglab
