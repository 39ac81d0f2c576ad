#include "tippinglab/recognizers.hpp"

#include <numeric>
#include <vector>

namespace tippinglab {

std::string_view to_string(Property p) {
    switch (p) {
        case Property::acyclic: return "acyclic";
        case Property::planar: return "planar";
        case Property::outerplanar: return "outerplanar";
        case Property::nearplanar: return "nearplanar";
    }
    return "unknown";
}

Property parse_property(std::string_view tag) {
    for (auto p : kAllProperties)
        if (to_string(p) == tag) return p;
    throw UnknownProperty("unknown property '" + std::string(tag) +
                          "' (expected acyclic, planar, outerplanar or nearplanar)");
}

bool is_acyclic(const Graph& g) {
    if (g.size() >= g.order()) return false;
    std::vector<Vertex> parent(static_cast<std::size_t>(g.order()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& e : g.edges()) {
        auto a = find(e.u);
        auto b = find(e.v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

bool is_planar(const Graph& g, ComponentStrategy strategy) {
    const std::int64_t n = g.order();
    if (n >= 3 && g.size() > 3 * n - 6) return false;
    if (strategy == ComponentStrategy::make_connected) {
        const auto joined = make_connected(g);
        return lr_planar(joined.graph.order(), joined.graph.edges());
    }
    return lr_planar(g.order(), g.edges());
}

bool is_outerplanar(const Graph& g) {
    const Vertex n = g.order();
    if (n >= 2 && g.size() > 2 * static_cast<std::int64_t>(n) - 3) return false;
    std::vector<Edge> apex(g.edges().begin(), g.edges().end());
    apex.reserve(apex.size() + static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) apex.push_back({v, n});
    return lr_planar(n + 1, apex);
}

namespace {

/// Planarity of g without the edges in positions [lo, hi).
bool planar_without(const Graph& g, std::size_t lo, std::size_t hi, std::vector<Edge>& scratch) {
    const auto edges = g.edges();
    scratch.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(lo));
    scratch.insert(scratch.end(), edges.begin() + static_cast<std::ptrdiff_t>(hi), edges.end());
    return lr_planar(g.order(), scratch);
}

/// Removing more edges never destroys planarity, so a range whose removal
/// leaves g non-planar contains no single witness edge and can be pruned.
/// Left-first bisection therefore returns the smallest witness position.
std::optional<std::size_t> first_witness(const Graph& g, std::size_t lo, std::size_t hi,
                                         std::vector<Edge>& scratch) {
    if (!planar_without(g, lo, hi, scratch)) return std::nullopt;
    if (hi - lo == 1) return lo;
    const auto mid = lo + (hi - lo) / 2;
    if (auto hit = first_witness(g, lo, mid, scratch)) return hit;
    return first_witness(g, mid, hi, scratch);
}

}  // namespace

NearPlanarWitness is_near_planar(const Graph& g) {
    if (is_planar(g)) return {true, std::nullopt};
    const std::int64_t n = g.order();
    if (n >= 3 && g.size() > 3 * n - 5) return {false, std::nullopt};
    std::vector<Edge> scratch;
    const auto m = static_cast<std::size_t>(g.size());
    const auto mid = m / 2;
    auto hit = first_witness(g, 0, mid, scratch);
    if (!hit) hit = first_witness(g, mid, m, scratch);
    if (!hit) return {false, std::nullopt};
    return {true, g.edges()[*hit]};
}

bool near_planar_verdict(const Graph& g, bool small_graph_fast_path) {
    if (small_graph_fast_path && g.size() <= 11) return true;
    return is_near_planar(g).verdict;
}

bool holds(Property p, const Graph& g) {
    switch (p) {
        case Property::acyclic: return is_acyclic(g);
        case Property::planar: return is_planar(g);
        case Property::outerplanar: return is_outerplanar(g);
        case Property::nearplanar: return near_planar_verdict(g);
    }
    return false;
}

SignificantInterval significant_interval(Property p, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("significant_interval requires n >= 1");
    const double nd = static_cast<double>(n);
    switch (p) {
        case Property::acyclic: return {p, 3 / nd, 1 - 1 / nd};
        case Property::planar: return {p, 9 / nd, (3 * nd - 6) / nd};
        case Property::outerplanar: return {p, 6 / nd, (2 * nd - 3) / nd};
        case Property::nearplanar: return {p, 14 / nd, (3 * nd - 5) / nd};
    }
    throw UnknownProperty("unknown property");
}

}  // namespace tippinglab
