#pragma once

#include <cstdint>
#include <string_view>

#include "tippinglab/decimal.hpp"
#include "tippinglab/graph.hpp"

namespace tippinglab {

/// Nearest integer with exact halves rounded up (0.5 -> 1). Requires x >= 0.
std::int64_t round_half_up(double x);

/// round_half_up(n * d) computed exactly on the decimal representation.
std::int64_t round_half_up(std::int64_t n, Decimal d);

struct EdgeCount {
    std::int64_t m = 0;
    /// False when m exceeds C(n, 2): no simple graph exists, the cell is skipped.
    bool feasible = true;
};

EdgeCount edge_count(std::int64_t n, Decimal density);

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: output i is mix64(key + i * golden_gamma).
///
/// The sequence depends on the key alone, so streams are independent of
/// how many other streams exist or which thread consumes them.
class RngState {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit constexpr RngState(std::uint64_t seed) : key_(seed) {}

    constexpr std::uint64_t next() {
        ++counter_;
        return mix64(key_ + counter_ * kGamma);
    }

    /// Unbiased integer in [0, bound), bound > 0 (Lemire's multiply-reject).
    std::uint64_t uniform_below(std::uint64_t bound);

    std::uint64_t seed() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Uniform sample from G(n, m): every labeled simple graph with n vertices
/// and m edges is equally likely. Throws std::invalid_argument when m is
/// outside [0, C(n, 2)].
Graph random_simple_graph(Vertex n, std::int64_t m, RngState& rng);

/// 64-bit FNV-1a of the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

/// Seed for one sample of one sweep cell:
///
///   h = mix64(master)
///   h = mix64(h ^ n)
///   h = mix64(h ^ m)
///   h = mix64(h ^ fnv1a64(tag))
///   h = mix64(h ^ replicate)
///
/// with all quantities taken as unsigned 64-bit integers.
std::uint64_t derive_cell_seed(std::uint64_t master, std::int64_t n, std::int64_t m,
                               std::string_view tag, std::uint64_t replicate);

}  // namespace tippinglab
