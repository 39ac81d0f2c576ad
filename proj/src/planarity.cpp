// Left-right planarity criterion (de Fraysseix / Rosenstiehl, in the
// formulation of Brandes), testing only; no embedding is produced.
//
// Phase 1 orients the graph along a DFS forest and computes, per oriented
// edge, the two lowest return points and the nesting depth. Phase 2 visits
// out-edges by nesting depth and maintains a stack of conflict pairs of
// return-edge intervals; an interval pair that must go on both sides at
// once proves non-planarity.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tippinglab/recognizers.hpp"

namespace tippinglab {

namespace {

constexpr std::int32_t kNone = -1;

struct Interval {
    std::int32_t low = kNone;
    std::int32_t high = kNone;
    bool empty() const { return low == kNone && high == kNone; }
};

struct ConflictPair {
    Interval left;
    Interval right;
    std::int64_t id = kNone;  // identity for stack_bottom comparisons
};

class LrPlanarity {
public:
    bool run(Vertex n, std::span<const Edge> edges) {
        n_ = n;
        m_ = static_cast<std::int32_t>(edges.size());
        if (n_ > 2 && static_cast<std::int64_t>(m_) > 3 * static_cast<std::int64_t>(n_) - 6) return false;
        reset(edges);

        for (Vertex v = 0; v < n_; ++v) {
            if (height_[v] != kNone) continue;
            height_[v] = 0;
            roots_.push_back(v);
            orient(v);
        }
        order_by_nesting_depth();
        for (auto root : roots_)
            if (!test(root)) return false;
        return true;
    }

private:
    void reset(std::span<const Edge> edges) {
        const auto n = static_cast<std::size_t>(n_);
        const auto m = static_cast<std::size_t>(m_);
        adj_offsets_.assign(n + 1, 0);
        for (const auto& e : edges) {
            ++adj_offsets_[e.u + 1];
            ++adj_offsets_[e.v + 1];
        }
        for (std::size_t v = 0; v < n; ++v) adj_offsets_[v + 1] += adj_offsets_[v];
        adj_.resize(2 * m);
        fill_.assign(adj_offsets_.begin(), adj_offsets_.end() - 1);
        end_a_.resize(m);
        end_b_.resize(m);
        for (std::int32_t i = 0; i < m_; ++i) {
            end_a_[i] = edges[i].u;
            end_b_[i] = edges[i].v;
            adj_[fill_[edges[i].u]++] = i;
            adj_[fill_[edges[i].v]++] = i;
        }

        oriented_.assign(m, 0);
        src_.resize(m);
        dst_.resize(m);
        lowpt_.resize(m);
        lowpt2_.resize(m);
        nesting_.resize(m);
        ref_.assign(m, kNone);
        lowpt_edge_.assign(m, kNone);
        stack_bottom_.assign(m, kNone);
        skip_.assign(m, 0);

        height_.assign(n, kNone);
        parent_edge_.assign(n, kNone);
        next_.assign(n, 0);
        roots_.clear();
        stack_.clear();
        conflicts_.clear();
        next_id_ = 0;
    }

    std::int32_t other(std::int32_t e, Vertex v) const { return end_a_[e] == v ? end_b_[e] : end_a_[e]; }

    void orient(Vertex root) {
        stack_.push_back(root);
        while (!stack_.empty()) {
            const Vertex v = stack_.back();
            stack_.pop_back();
            const auto e = parent_edge_[v];
            const auto begin = adj_offsets_[v];
            const auto degree = adj_offsets_[v + 1] - begin;
            for (; next_[v] < degree; ++next_[v]) {
                const auto vw = adj_[begin + next_[v]];
                const bool resumed = skip_[vw] && src_[vw] == v;
                if (!resumed) {
                    if (oriented_[vw]) continue;
                    const Vertex w = other(vw, v);
                    oriented_[vw] = 1;
                    src_[vw] = v;
                    dst_[vw] = w;
                    lowpt_[vw] = height_[v];
                    lowpt2_[vw] = height_[v];
                    if (height_[w] == kNone) {  // tree edge
                        parent_edge_[w] = vw;
                        height_[w] = height_[v] + 1;
                        skip_[vw] = 1;
                        stack_.push_back(v);
                        stack_.push_back(w);
                        break;
                    }
                    lowpt_[vw] = height_[w];  // back edge
                }
                nesting_[vw] = 2 * lowpt_[vw] + (lowpt2_[vw] < height_[v] ? 1 : 0);
                if (e != kNone) {
                    if (lowpt_[vw] < lowpt_[e]) {
                        lowpt2_[e] = std::min(lowpt_[e], lowpt2_[vw]);
                        lowpt_[e] = lowpt_[vw];
                    } else if (lowpt_[vw] > lowpt_[e]) {
                        lowpt2_[e] = std::min(lowpt2_[e], lowpt_[vw]);
                    } else {
                        lowpt2_[e] = std::min(lowpt2_[e], lowpt2_[vw]);
                    }
                }
            }
        }
    }

    void order_by_nesting_depth() {
        // Counting sort of all edges by nesting depth, then a stable
        // distribution into per-source out-lists.
        const auto n = static_cast<std::size_t>(n_);
        const std::size_t depths = 2 * n + 2;
        bucket_.assign(depths + 1, 0);
        for (std::int32_t e = 0; e < m_; ++e) ++bucket_[nesting_[e] + 1];
        for (std::size_t d = 0; d < depths; ++d) bucket_[d + 1] += bucket_[d];
        by_depth_.resize(static_cast<std::size_t>(m_));
        for (std::int32_t e = 0; e < m_; ++e) by_depth_[bucket_[nesting_[e]]++] = e;

        out_offsets_.assign(n + 1, 0);
        for (std::int32_t e = 0; e < m_; ++e) ++out_offsets_[src_[e] + 1];
        for (std::size_t v = 0; v < n; ++v) out_offsets_[v + 1] += out_offsets_[v];
        out_.resize(static_cast<std::size_t>(m_));
        fill_.assign(out_offsets_.begin(), out_offsets_.end() - 1);
        for (auto e : by_depth_) out_[fill_[src_[e]]++] = e;

        next_.assign(n, 0);
        std::fill(skip_.begin(), skip_.end(), 0);
    }

    std::int64_t top_id() const { return conflicts_.empty() ? kNone : conflicts_.back().id; }

    bool conflicting(const Interval& i, std::int32_t b) const {
        return !i.empty() && lowpt_[i.high] > lowpt_[b];
    }

    std::int32_t lowest(const ConflictPair& p) const {
        if (p.left.empty()) return lowpt_[p.right.low];
        if (p.right.empty()) return lowpt_[p.left.low];
        return std::min(lowpt_[p.left.low], lowpt_[p.right.low]);
    }

    bool test(Vertex root) {
        stack_.push_back(root);
        while (!stack_.empty()) {
            const Vertex v = stack_.back();
            stack_.pop_back();
            const auto e = parent_edge_[v];
            const auto begin = out_offsets_[v];
            const auto degree = out_offsets_[v + 1] - begin;
            bool descended = false;
            for (; next_[v] < degree; ++next_[v]) {
                const auto ei = out_[begin + next_[v]];
                if (!skip_[ei]) {
                    stack_bottom_[ei] = top_id();
                    const Vertex w = dst_[ei];
                    if (ei == parent_edge_[w]) {  // tree edge
                        skip_[ei] = 1;
                        stack_.push_back(v);
                        stack_.push_back(w);
                        descended = true;
                        break;
                    }
                    lowpt_edge_[ei] = ei;  // back edge
                    conflicts_.push_back({{}, {ei, ei}, next_id_++});
                }
                // integrate new return edges
                if (lowpt_[ei] < height_[v]) {
                    if (next_[v] == 0) {
                        lowpt_edge_[e] = lowpt_edge_[ei];
                    } else if (!add_constraints(ei, e)) {
                        return false;
                    }
                }
            }
            if (!descended && e != kNone) remove_back_edges(e);
        }
        return true;
    }

    bool add_constraints(std::int32_t ei, std::int32_t e) {
        ConflictPair p;
        p.id = next_id_++;
        // merge return edges of ei into p.right
        do {
            auto q = conflicts_.back();
            conflicts_.pop_back();
            if (!q.left.empty()) std::swap(q.left, q.right);
            if (!q.left.empty()) return false;
            if (lowpt_[q.right.low] > lowpt_[e]) {
                if (p.right.empty())
                    p.right.high = q.right.high;
                else
                    ref_[p.right.low] = q.right.high;
                p.right.low = q.right.low;
            } else {
                ref_[q.right.low] = lowpt_edge_[e];
            }
        } while (top_id() != stack_bottom_[ei]);

        // merge conflicting return edges of earlier siblings into p.left
        while (!conflicts_.empty() &&
               (conflicting(conflicts_.back().left, ei) || conflicting(conflicts_.back().right, ei))) {
            auto q = conflicts_.back();
            conflicts_.pop_back();
            if (conflicting(q.right, ei)) std::swap(q.left, q.right);
            if (conflicting(q.right, ei)) return false;
            if (p.right.low != kNone) ref_[p.right.low] = q.right.high;
            if (q.right.low != kNone) p.right.low = q.right.low;
            if (p.left.empty())
                p.left.high = q.left.high;
            else
                ref_[p.left.low] = q.left.high;
            p.left.low = q.left.low;
        }
        if (!(p.left.empty() && p.right.empty())) conflicts_.push_back(p);
        return true;
    }

    void remove_back_edges(std::int32_t e) {
        const Vertex u = src_[e];
        // drop entire conflict pairs whose lowest return point is u
        while (!conflicts_.empty() && lowest(conflicts_.back()) == height_[u]) conflicts_.pop_back();
        if (!conflicts_.empty()) {
            auto p = conflicts_.back();
            conflicts_.pop_back();
            while (p.left.high != kNone && dst_[p.left.high] == u) p.left.high = ref_[p.left.high];
            if (p.left.high == kNone && p.left.low != kNone) {
                ref_[p.left.low] = p.right.low;
                p.left.low = kNone;
            }
            while (p.right.high != kNone && dst_[p.right.high] == u) p.right.high = ref_[p.right.high];
            if (p.right.high == kNone && p.right.low != kNone) {
                ref_[p.right.low] = p.left.low;
                p.right.low = kNone;
            }
            conflicts_.push_back(p);
        }
        // side of e follows a highest return edge
        if (lowpt_[e] < height_[u] && !conflicts_.empty()) {
            const auto hl = conflicts_.back().left.high;
            const auto hr = conflicts_.back().right.high;
            ref_[e] = (hl != kNone && (hr == kNone || lowpt_[hl] > lowpt_[hr])) ? hl : hr;
        }
    }

    Vertex n_ = 0;
    std::int32_t m_ = 0;

    std::vector<std::int32_t> adj_offsets_, adj_, fill_, end_a_, end_b_;
    std::vector<std::int32_t> out_offsets_, out_, bucket_, by_depth_;
    std::vector<char> oriented_, skip_;
    std::vector<std::int32_t> src_, dst_, lowpt_, lowpt2_, nesting_, ref_, lowpt_edge_;
    std::vector<std::int64_t> stack_bottom_;
    std::vector<std::int32_t> height_, parent_edge_, next_;
    std::vector<Vertex> roots_, stack_;
    std::vector<ConflictPair> conflicts_;
    std::int64_t next_id_ = 0;
};

}  // namespace

bool lr_planar(Vertex n, std::span<const Edge> edges) {
    thread_local LrPlanarity tester;
    return tester.run(n, edges);
}

}  // namespace tippinglab
