#include "tippinglab/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tippinglab {

std::int64_t round_half_up(double x) {
    if (!(x >= 0)) throw std::invalid_argument("round_half_up requires x >= 0");
    // x - floor(x) is exact for non-negative doubles.
    const double whole = std::floor(x);
    return static_cast<std::int64_t>(whole) + (x - whole >= 0.5 ? 1 : 0);
}

std::int64_t round_half_up(std::int64_t n, Decimal d) {
    const auto product = n * d.units();
    return (product + Decimal::kScale / 2) / Decimal::kScale;
}

EdgeCount edge_count(std::int64_t n, Decimal density) {
    if (n < 1) throw std::invalid_argument("edge_count requires n >= 1");
    EdgeCount c;
    c.m = round_half_up(n, density);
    c.feasible = c.m <= pair_count(n);
    return c;
}

std::uint64_t RngState::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below requires bound > 0");
    auto product = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(next()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

Graph random_simple_graph(Vertex n, std::int64_t m, RngState& rng) {
    if (n < 0) throw std::invalid_argument("random_simple_graph: negative n");
    const std::int64_t total = pair_count(n);
    if (m < 0 || m > total)
        throw std::invalid_argument("random_simple_graph: m=" + std::to_string(m) +
                                    " outside [0, " + std::to_string(total) + "]");

    // Mark the smaller of the chosen set and its complement by rejection;
    // either way every m-subset of pair indices is equally likely.
    const bool complement = m > total / 2;
    const std::int64_t marks = complement ? total - m : m;
    thread_local std::vector<std::uint64_t> bits;
    bits.assign(static_cast<std::size_t>((total + 63) / 64), 0);
    for (std::int64_t placed = 0; placed < marks;) {
        const auto idx = rng.uniform_below(static_cast<std::uint64_t>(total));
        auto& word = bits[idx >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
        if (word & bit) continue;
        word |= bit;
        ++placed;
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    Vertex u = 0;
    std::int64_t row_end = n - 1;  // first index past row u
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = complement ? ~bits[w] : bits[w];
        if (w + 1 == bits.size() && total % 64 != 0) word &= (std::uint64_t{1} << (total % 64)) - 1;
        while (word) {
            const auto idx = static_cast<std::int64_t>(w * 64 + std::countr_zero(word));
            word &= word - 1;
            while (idx >= row_end) {
                ++u;
                row_end += n - 1 - u;
            }
            const auto v = static_cast<Vertex>(n - (row_end - idx));
            edges.push_back({u, v});
        }
    }
    return Graph::from_sorted_edges(n, std::move(edges));
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_cell_seed(std::uint64_t master, std::int64_t n, std::int64_t m,
                               std::string_view tag, std::uint64_t replicate) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ static_cast<std::uint64_t>(n));
    h = mix64(h ^ static_cast<std::uint64_t>(m));
    h = mix64(h ^ fnv1a64(tag));
    h = mix64(h ^ replicate);
    return h;
}

}  // namespace tippinglab
