#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tippinglab/graph.hpp"

namespace tippinglab {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A subdivision of K5 or K3,3 inside a graph.
struct KuratowskiWitness {
    enum class Kind { k5, k33 };
    Kind kind = Kind::k5;
    /// K5: five branch vertices. K3,3: the first three form one side.
    std::vector<Vertex> branch;
    /// One path per branch pair that must be joined, endpoints included.
    /// Paths are internally vertex-disjoint and avoid branch vertices.
    std::vector<std::vector<Vertex>> paths;
};

/// Exhaustive search for a Kuratowski subdivision; by Kuratowski's theorem
/// g is planar iff none exists. Independent of the linear-time tester and
/// meant as its oracle. Throws BudgetExceeded for n > 8.
std::optional<KuratowskiWitness> find_kuratowski_bruteforce(const Graph& g);

/// Checks that `w` really is a subdivision inside g.
bool verify_kuratowski_witness(const Graph& g, const KuratowskiWitness& w);

}  // namespace tippinglab
