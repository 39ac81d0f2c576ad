#include "tippinglab/kuratowski.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <utility>

namespace tippinglab {

namespace {

constexpr Vertex kMaxVertices = 8;

using Mask = std::uint32_t;

class SubdivisionSearch {
public:
    explicit SubdivisionSearch(const Graph& g) : n_(g.order()) {
        for (const auto& e : g.edges()) {
            adj_[e.u] |= Mask{1} << e.v;
            adj_[e.v] |= Mask{1} << e.u;
        }
    }

    std::optional<KuratowskiWitness> run() {
        if (auto w = search_k5()) return w;
        return search_k33();
    }

private:
    int degree(Vertex v) const { return std::popcount(adj_[v]); }

    std::optional<KuratowskiWitness> search_k5() {
        const Mask all = (Mask{1} << n_) - 1;
        for (Mask set = 0; set <= all; ++set) {
            if (std::popcount(set) != 5) continue;
            std::vector<Vertex> branch;
            for (Vertex v = 0; v < n_; ++v)
                if (set >> v & 1) branch.push_back(v);
            if (std::any_of(branch.begin(), branch.end(), [&](Vertex v) { return degree(v) < 4; })) continue;
            std::vector<std::pair<Vertex, Vertex>> pairs;
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = i + 1; j < 5; ++j) pairs.emplace_back(branch[i], branch[j]);
            if (auto w = link(KuratowskiWitness::Kind::k5, branch, pairs, set)) return w;
        }
        return std::nullopt;
    }

    std::optional<KuratowskiWitness> search_k33() {
        const Mask all = (Mask{1} << n_) - 1;
        for (Mask set = 0; set <= all; ++set) {
            if (std::popcount(set) != 6) continue;
            std::vector<Vertex> six;
            for (Vertex v = 0; v < n_; ++v)
                if (set >> v & 1) six.push_back(v);
            if (std::any_of(six.begin(), six.end(), [&](Vertex v) { return degree(v) < 3; })) continue;
            // Side A holds six[0] plus two of the remaining five.
            for (std::size_t a = 1; a < 6; ++a) {
                for (std::size_t b = a + 1; b < 6; ++b) {
                    std::vector<Vertex> left{six[0], six[a], six[b]};
                    std::vector<Vertex> right;
                    for (std::size_t i = 1; i < 6; ++i)
                        if (i != a && i != b) right.push_back(six[i]);
                    std::vector<std::pair<Vertex, Vertex>> pairs;
                    for (auto x : left)
                        for (auto y : right) pairs.emplace_back(x, y);
                    std::vector<Vertex> branch = left;
                    branch.insert(branch.end(), right.begin(), right.end());
                    if (auto w = link(KuratowskiWitness::Kind::k33, branch, pairs, set)) return w;
                }
            }
        }
        return std::nullopt;
    }

    std::optional<KuratowskiWitness> link(KuratowskiWitness::Kind kind, const std::vector<Vertex>& branch,
                                          const std::vector<std::pair<Vertex, Vertex>>& pairs, Mask branch_mask) {
        pairs_ = &pairs;
        paths_.assign(pairs.size(), {});
        if (!link_from(0, branch_mask)) return std::nullopt;
        return KuratowskiWitness{kind, branch, paths_};
    }

    // Joins pairs[idx..] by internally disjoint paths through vertices not
    // yet in `blocked`.
    bool link_from(std::size_t idx, Mask blocked) {
        if (idx == pairs_->size()) return true;
        const auto [a, b] = (*pairs_)[idx];
        std::vector<Vertex> path{a};
        return extend(idx, b, path, blocked);
    }

    bool extend(std::size_t idx, Vertex target, std::vector<Vertex>& path, Mask blocked) {
        const Vertex cur = path.back();
        if (adj_[cur] >> target & 1) {
            path.push_back(target);
            paths_[idx] = path;
            // Internal vertices of this path become unavailable.
            if (link_from(idx + 1, blocked)) return true;
            path.pop_back();
        }
        Mask options = adj_[cur] & ~blocked & ~(Mask{1} << target);
        while (options) {
            const auto next = static_cast<Vertex>(std::countr_zero(options));
            options &= options - 1;
            path.push_back(next);
            if (extend(idx, target, path, blocked | (Mask{1} << next))) return true;
            path.pop_back();
        }
        return false;
    }

    Vertex n_;
    std::array<Mask, kMaxVertices> adj_{};
    const std::vector<std::pair<Vertex, Vertex>>* pairs_ = nullptr;
    std::vector<std::vector<Vertex>> paths_;
};

}  // namespace

std::optional<KuratowskiWitness> find_kuratowski_bruteforce(const Graph& g) {
    if (g.order() > kMaxVertices)
        throw BudgetExceeded("Kuratowski brute force is limited to n <= 8, got n=" + std::to_string(g.order()));
    if (g.order() < 5) return std::nullopt;
    return SubdivisionSearch(g).run();
}

bool verify_kuratowski_witness(const Graph& g, const KuratowskiWitness& w) {
    const std::size_t branches = w.kind == KuratowskiWitness::Kind::k5 ? 5 : 6;
    const std::size_t expected_paths = w.kind == KuratowskiWitness::Kind::k5 ? 10 : 9;
    if (w.branch.size() != branches || w.paths.size() != expected_paths) return false;
    std::set<Vertex> branch(w.branch.begin(), w.branch.end());
    if (branch.size() != branches) return false;

    std::set<std::pair<Vertex, Vertex>> joined;
    std::set<Vertex> interior;
    for (const auto& p : w.paths) {
        if (p.size() < 2) return false;
        if (!branch.count(p.front()) || !branch.count(p.back())) return false;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (!g.has_edge(p[i], p[i + 1])) return false;
        for (std::size_t i = 1; i + 1 < p.size(); ++i)
            if (branch.count(p[i]) || !interior.insert(p[i]).second) return false;
        joined.insert(std::minmax(p.front(), p.back()));
    }
    if (joined.size() != expected_paths) return false;
    if (w.kind == KuratowskiWitness::Kind::k33) {
        const std::set<Vertex> left(w.branch.begin(), w.branch.begin() + 3);
        for (const auto& [a, b] : joined)
            if (left.count(a) == left.count(b)) return false;
    }
    return true;
}

}  // namespace tippinglab
