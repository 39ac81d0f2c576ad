#include "tippinglab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>

namespace tippinglab {

namespace {

std::int64_t row_start(std::int64_t n, std::int64_t u) { return u * (2 * n - u - 1) / 2; }

std::string pair_name(Vertex u, Vertex v) {
    return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

std::int64_t pair_index(Vertex n, Vertex u, Vertex v) {
    return row_start(n, u) + (v - u - 1);
}

Edge pair_from_index(Vertex n, std::int64_t index) {
    // Largest u with row_start(u) <= index, seeded from the closed form.
    const double nn = static_cast<double>(n);
    const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
    auto u = static_cast<std::int64_t>(std::floor(((2 * nn - 1) - std::sqrt(std::max(disc, 0.0))) / 2));
    u = std::clamp<std::int64_t>(u, 0, n - 2);
    while (u > 0 && row_start(n, u) > index) --u;
    while (u + 1 <= n - 2 && row_start(n, u + 1) <= index) ++u;
    const auto v = index - row_start(n, u) + u + 1;
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Graph::Graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) : n_(n) {
    if (n < 0) throw ValidationError("negative vertex count");
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a == b) throw ValidationError("self-loop " + pair_name(a, b));
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw ValidationError("endpoint out of range in " + pair_name(a, b) +
                                  " for n=" + std::to_string(n));
        edges_.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) throw ValidationError("duplicate edge " + pair_name(dup->u, dup->v));
    build_adjacency();
}

Graph::Graph(Vertex n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

Graph Graph::from_sorted_edges(Vertex n, std::vector<Edge> edges) {
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.build_adjacency();
    return g;
}

void Graph::build_adjacency() {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::int32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[fill[e.u]++] = e.v;
        adjacency_[fill[e.v]++] = e.u;
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

void Graph::validate() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.u == e.v) throw ValidationError("self-loop " + pair_name(e.u, e.v));
        if (e.u < 0 || e.v >= n_ || e.u > e.v)
            throw ValidationError("bad endpoint in " + pair_name(e.u, e.v));
        if (i > 0 && !(edges_[i - 1] < e))
            throw ValidationError("duplicate or unsorted edge " + pair_name(e.u, e.v));
    }
    if (size() > pair_count(n_)) throw ValidationError("more edges than vertex pairs");
}

ComponentPartition connected_components(const Graph& g) {
    ComponentPartition p;
    p.component.assign(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (p.component[s] != -1) continue;
        const auto id = p.count++;
        p.component[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g.neighbors(v)) {
                if (p.component[w] == -1) {
                    p.component[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return p;
}

Connected make_connected(const Graph& g) {
    const auto parts = connected_components(g);
    if (parts.count <= 1) return {g, 0};
    // First-seen ids mean the representative of component c is the first
    // vertex carrying id c.
    std::vector<Vertex> rep(static_cast<std::size_t>(parts.count), -1);
    for (Vertex v = 0; v < g.order(); ++v)
        if (rep[parts.component[v]] == -1) rep[parts.component[v]] = v;
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (std::int32_t c = 1; c < parts.count; ++c) edges.push_back({rep[c - 1], rep[c]});
    std::sort(edges.begin(), edges.end());
    return {Graph::from_sorted_edges(g.order(), std::move(edges)), parts.count - 1};
}

Graph complete_graph(Vertex k) {
    if (k < 1) throw ValidationError("complete_graph needs k >= 1");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < k; ++u)
        for (Vertex v = u + 1; v < k; ++v) edges.push_back({u, v});
    return Graph::from_sorted_edges(k, std::move(edges));
}

Graph complete_bipartite(Vertex a, Vertex b) {
    if (a < 1 || b < 1) throw ValidationError("complete_bipartite needs a, b >= 1");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = a; v < a + b; ++v) edges.push_back({u, v});
    return Graph::from_sorted_edges(a + b, std::move(edges));
}

Graph cycle_graph(Vertex k) {
    if (k < 3) throw ValidationError("cycle_graph needs k >= 3");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < k; ++v) edges.emplace_back(v, (v + 1) % k);
    return Graph(k, edges);
}

Graph path_graph(Vertex k) {
    if (k < 1) throw ValidationError("path_graph needs k >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
    return Graph(k, edges);
}

Graph wheel_graph(Vertex k) {
    if (k < 4) throw ValidationError("wheel_graph needs k >= 4");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < k; ++v) {
        edges.emplace_back(0, v);
        edges.emplace_back(v, v + 1 < k ? v + 1 : 1);
    }
    return Graph(k, edges);
}

Graph remove_edges(const Graph& g, std::span<const Edge> removed) {
    std::vector<Edge> sorted_removed(removed.begin(), removed.end());
    std::sort(sorted_removed.begin(), sorted_removed.end());
    std::vector<Edge> kept;
    kept.reserve(g.edges().size());
    std::set_difference(g.edges().begin(), g.edges().end(), sorted_removed.begin(),
                        sorted_removed.end(), std::back_inserter(kept));
    return Graph::from_sorted_edges(g.order(), std::move(kept));
}

std::string to_text(const Graph& g) {
    std::string out = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

namespace {

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    std::int64_t next(const char* what) {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
        if (pos_ == text_.size())
            throw ParseError("line " + std::to_string(line_) + ": missing " + what);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc{} || (ptr != text_.data() + text_.size() && !std::isspace(static_cast<unsigned char>(*ptr))))
            throw ParseError("line " + std::to_string(line_) + ": expected integer " + what);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

    bool at_end() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return pos_ == text_.size();
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace

Graph parse_graph_text(std::string_view text) {
    Tokenizer tok(text);
    const auto n = tok.next("vertex count");
    const auto m = tok.next("edge count");
    if (n < 0 || m < 0 || n > 1'000'000) throw ParseError("header: invalid n or m");
    if (m > pair_count(n)) throw ParseError("header: more edges than vertex pairs");
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        auto u = tok.next("edge endpoint");
        auto v = tok.next("edge endpoint");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ValidationError("endpoint out of range in " + pair_name(static_cast<Vertex>(u), static_cast<Vertex>(v)));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!tok.at_end()) throw ParseError("trailing data after " + std::to_string(m) + " edges");
    return Graph(static_cast<Vertex>(n), edges);
}

}  // namespace tippinglab
