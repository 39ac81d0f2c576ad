#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tippinglab {

using Vertex = std::int32_t;

/// Unordered vertex pair, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number of unordered pairs on n vertices, C(n, 2).
constexpr std::int64_t pair_count(std::int64_t n) { return n * (n - 1) / 2; }

/// Position of {u, v} (u < v) in the lexicographic order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
std::int64_t pair_index(Vertex n, Vertex u, Vertex v);

/// Inverse of pair_index.
Edge pair_from_index(Vertex n, std::int64_t index);

/// Simple undirected labeled graph on vertices 0..n-1.
///
/// Immutable after construction. The edge list is kept sorted and
/// normalized, so two graphs with the same edge set compare equal no matter
/// how their edges were supplied.
class Graph {
public:
    Graph() = default;

    /// Validates and normalizes. Throws ValidationError naming the offending
    /// pair on a loop, a duplicate, or an out-of-range endpoint.
    Graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);
    Graph(Vertex n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

    /// Skips validation. `edges` must already be sorted, normalized and
    /// duplicate free (e.g. decoded from strictly increasing pair indices).
    static Graph from_sorted_edges(Vertex n, std::vector<Edge> edges);

    Vertex order() const { return n_; }
    std::int64_t size() const { return static_cast<std::int64_t>(edges_.size()); }
    std::span<const Edge> edges() const { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::int32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(Vertex u, Vertex v) const;

    /// Re-checks the structural invariants; throws ValidationError.
    void validate() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void build_adjacency();

    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::int32_t> offsets_{0};
    std::vector<Vertex> adjacency_;
};

struct ComponentPartition {
    std::vector<std::int32_t> component;  // id per vertex, 0..count-1
    std::int32_t count = 0;
};

/// Ids are assigned in first-seen order scanning vertex labels upward.
ComponentPartition connected_components(const Graph& g);

struct Connected {
    Graph graph;
    std::int64_t added = 0;
};

/// Adds the minimum number of edges that make `g` connected: the smallest
/// label of each component is joined to the smallest label of the next
/// component, components taken in order of their smallest label.
Connected make_connected(const Graph& g);

Graph complete_graph(Vertex k);
Graph complete_bipartite(Vertex a, Vertex b);
Graph cycle_graph(Vertex k);
Graph path_graph(Vertex k);
/// Hub 0 joined to a rim cycle 1..k-1.
Graph wheel_graph(Vertex k);

/// Returns a copy of `g` without the listed edges.
Graph remove_edges(const Graph& g, std::span<const Edge> removed);

/// Text format: a line "n m" followed by m lines "u v" with u < v.
std::string to_text(const Graph& g);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ParseError on malformed text, ValidationError on invalid edges.
Graph parse_graph_text(std::string_view text);

}  // namespace tippinglab
