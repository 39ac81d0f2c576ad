#include <gtest/gtest.h>

#include <array>

#include "tippinglab/exact.hpp"
#include "tippinglab/kuratowski.hpp"
#include "tippinglab/random.hpp"
#include "tippinglab/recognizers.hpp"

using namespace tippinglab;

namespace {

/// Every labeled graph on n vertices, via bitmask over pair indices.
template <class F>
void for_all_graphs(Vertex n, F&& f) {
    const auto pairs = pair_count(n);
    std::vector<Edge> all;
    for (std::int64_t i = 0; i < pairs; ++i) all.push_back(pair_from_index(n, i));
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        std::vector<Edge> edges;
        for (std::int64_t i = 0; i < pairs; ++i)
            if (mask >> i & 1) edges.push_back(all[static_cast<std::size_t>(i)]);
        f(Graph::from_sorted_edges(n, std::move(edges)));
    }
}

bool oracle_planar(const Graph& g) { return !find_kuratowski_bruteforce(g).has_value(); }

bool oracle_near_planar(const Graph& g) {
    if (oracle_planar(g)) return true;
    for (auto e : g.edges()) {
        const Edge one[] = {e};
        if (oracle_planar(remove_edges(g, one))) return true;
    }
    return false;
}

Graph apex_of(const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto e : g.edges()) pairs.emplace_back(e.u, e.v);
    for (Vertex v = 0; v < g.order(); ++v) pairs.emplace_back(v, g.order());
    return Graph(g.order() + 1, pairs);
}

Graph random_grid_graph(RngState& rng, Vertex max_n, double max_density) {
    const Vertex n = static_cast<Vertex>(rng.uniform_below(static_cast<std::uint64_t>(max_n))) + 1;
    const auto cap = std::min<std::int64_t>(pair_count(n), static_cast<std::int64_t>(max_density * n));
    const auto m = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(cap) + 1));
    return random_simple_graph(n, m, rng);
}

Graph subdivide(const Graph& g, Edge e) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto f : g.edges())
        if (f != e) pairs.emplace_back(f.u, f.v);
    pairs.emplace_back(e.u, g.order());
    pairs.emplace_back(e.v, g.order());
    return Graph(g.order() + 1, pairs);
}

}  // namespace

TEST(Property, Names) {
    for (auto p : kAllProperties) EXPECT_EQ(parse_property(to_string(p)), p);
    EXPECT_THROW(parse_property("quasiplanar"), UnknownProperty);
}

TEST(Acyclic, Examples) {
    EXPECT_FALSE(is_acyclic(complete_graph(3)));
    EXPECT_TRUE(is_acyclic(path_graph(5)));
    EXPECT_TRUE(is_acyclic(Graph(4, {})));
    EXPECT_FALSE(is_acyclic(Graph(6, {{0, 1}, {3, 4}, {4, 5}, {3, 5}})));
}

TEST(Acyclic, MatchesComponentIdentityExhaustive) {
    for (Vertex n = 1; n <= 6; ++n) {
        for_all_graphs(n, [&](const Graph& g) {
            ASSERT_EQ(is_acyclic(g), g.size() == n - connected_components(g).count) << to_text(g);
        });
    }
}

TEST(Planar, Examples) {
    EXPECT_TRUE(is_planar(complete_graph(4)));
    EXPECT_FALSE(is_planar(complete_graph(5)));
    EXPECT_FALSE(is_planar(complete_bipartite(3, 3)));
    EXPECT_TRUE(is_planar(complete_bipartite(2, 30)));
    EXPECT_TRUE(is_planar(wheel_graph(40)));
    EXPECT_TRUE(is_planar(Graph(0, {})));
    EXPECT_TRUE(is_planar(Graph(1, {})));
}

TEST(Planar, PetersenIsNotPlanar) {
    Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                        {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
    EXPECT_FALSE(is_planar(petersen));
}

TEST(Planar, GridAndTriangulationArePlanar) {
    std::vector<std::pair<Vertex, Vertex>> grid;
    const int w = 12;
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) {
            const int v = r * w + c;
            if (c + 1 < w) grid.emplace_back(v, v + 1);
            if (r + 1 < w) grid.emplace_back(v, v + w);
            if (c + 1 < w && r + 1 < w) grid.emplace_back(v, v + w + 1);
        }
    }
    const Graph g(w * w, grid);
    EXPECT_TRUE(is_planar(g));
    // Two chords between far interior vertices cannot both be drawn.
    auto bad = grid;
    bad.emplace_back(1 * w + 1, 10 * w + 10);
    bad.emplace_back(1 * w + 10, 10 * w + 1);
    EXPECT_FALSE(is_planar(Graph(w * w, bad)));
}

TEST(Planar, FewerThanNineEdgesAlwaysPlanar) {
    for (Vertex n = 1; n <= 6; ++n)
        for_all_graphs(n, [&](const Graph& g) {
            if (g.size() < 9) ASSERT_TRUE(is_planar(g));
        });
    RngState rng(41);
    for (int t = 0; t < 20000; ++t) {
        const Vertex n = static_cast<Vertex>(rng.uniform_below(30)) + 1;
        const auto m = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(std::min<std::int64_t>(8, pair_count(n))) + 1));
        ASSERT_TRUE(is_planar(random_simple_graph(n, m, rng)));
    }
}

TEST(Planar, ExhaustiveAgreesWithKuratowskiOracle) {
    for (Vertex n = 1; n <= 6; ++n) {
        for_all_graphs(n, [&](const Graph& g) { ASSERT_EQ(is_planar(g), oracle_planar(g)) << to_text(g); });
    }
}

TEST(Planar, RandomSevenVertexAgreesWithOracle) {
    RngState rng(7);
    for (int t = 0; t < 10'000; ++t) {
        const auto m = static_cast<std::int64_t>(rng.uniform_below(22));
        const auto g = random_simple_graph(7, m, rng);
        ASSERT_EQ(is_planar(g), oracle_planar(g)) << to_text(g);
    }
}

TEST(Planar, RandomEightVertexAgreesWithOracle) {
    RngState rng(8);
    for (int t = 0; t < 300; ++t) {
        const auto m = 10 + static_cast<std::int64_t>(rng.uniform_below(10));
        const auto g = random_simple_graph(8, m, rng);
        ASSERT_EQ(is_planar(g), oracle_planar(g)) << to_text(g);
    }
}

// Exact counts of labeled planar graphs (n = 1..6) by two independent deciders.
TEST(Planar, LabeledPlanarCounts) {
    const std::array<std::int64_t, 6> known{1, 2, 8, 64, 1023, 32071};
    for (Vertex n = 1; n <= 6; ++n) {
        std::int64_t fast = 0, oracle = 0;
        for_all_graphs(n, [&](const Graph& g) {
            fast += is_planar(g);
            oracle += oracle_planar(g);
        });
        EXPECT_EQ(fast, oracle) << n;
        EXPECT_EQ(fast, known[static_cast<std::size_t>(n - 1)]) << n;
    }
}

TEST(Planar, StrategiesAgree) {
    RngState rng(99);
    for (int t = 0; t < 100'000; ++t) {
        const auto g = random_grid_graph(rng, 60, 3.0);
        ASSERT_EQ(is_planar(g, ComponentStrategy::per_component), is_planar(g, ComponentStrategy::make_connected))
            << to_text(g);
    }
}

TEST(Planar, EdgeBoundShortCircuitAgreesWithOracle) {
    RngState rng(3);
    for (Vertex n = 3; n <= 8; ++n) {
        const auto lo = 3 * n - 5;
        for (std::int64_t m = lo; m <= std::min<std::int64_t>(pair_count(n), lo + 3); ++m) {
            for (int t = 0; t < 5; ++t) {
                const auto g = random_simple_graph(n, m, rng);
                EXPECT_TRUE(find_kuratowski_bruteforce(g).has_value()) << to_text(g);
                EXPECT_FALSE(is_planar(g));
            }
        }
    }
}

TEST(Outerplanar, Examples) {
    EXPECT_FALSE(is_outerplanar(complete_graph(4)));
    EXPECT_FALSE(is_outerplanar(complete_bipartite(2, 3)));
    for (Vertex k = 3; k <= 40; ++k) EXPECT_TRUE(is_outerplanar(cycle_graph(k)));
    EXPECT_TRUE(is_outerplanar(Graph(1, {})));
    EXPECT_TRUE(is_outerplanar(Graph(2, {{0, 1}})));
    // A triangulated polygon (fan) is maximal outerplanar.
    std::vector<std::pair<Vertex, Vertex>> fan;
    for (Vertex v = 1; v < 10; ++v) fan.emplace_back(0, v);
    for (Vertex v = 1; v + 1 < 10; ++v) fan.emplace_back(v, v + 1);
    EXPECT_TRUE(is_outerplanar(Graph(10, fan)));
    EXPECT_FALSE(is_outerplanar(wheel_graph(5)));
}

TEST(Outerplanar, FewerThanSixEdgesAlwaysOuterplanar) {
    for (Vertex n = 1; n <= 6; ++n)
        for_all_graphs(n, [&](const Graph& g) {
            if (g.size() < 6) ASSERT_TRUE(is_outerplanar(g)) << to_text(g);
        });
}

TEST(Outerplanar, ExhaustiveAgreesWithApexKuratowski) {
    for (Vertex n = 1; n <= 6; ++n)
        for_all_graphs(n, [&](const Graph& g) {
            ASSERT_EQ(is_outerplanar(g), oracle_planar(apex_of(g))) << to_text(g);
        });
}

TEST(NearPlanar, Examples) {
    const auto k4 = is_near_planar(complete_graph(4));
    EXPECT_TRUE(k4.verdict);
    EXPECT_FALSE(k4.removed_edge.has_value());

    const auto k5 = is_near_planar(complete_graph(5));
    ASSERT_TRUE(k5.verdict);
    ASSERT_TRUE(k5.removed_edge.has_value());
    EXPECT_EQ(*k5.removed_edge, (Edge{0, 1}));
    const Edge one[] = {*k5.removed_edge};
    EXPECT_TRUE(is_planar(remove_edges(complete_graph(5), one)));

    EXPECT_FALSE(is_near_planar(complete_bipartite(3, 4)).verdict);
    EXPECT_FALSE(near_planar_verdict(complete_bipartite(3, 4)));
    EXPECT_TRUE(is_near_planar(complete_bipartite(3, 3)).verdict);
}

TEST(NearPlanar, KSixHasNoPlanarSingleRemoval) {
    const auto k6 = complete_graph(6);
    for (auto e : k6.edges()) {
        const Edge one[] = {e};
        EXPECT_FALSE(is_planar(remove_edges(k6, one)));
    }
    EXPECT_FALSE(is_near_planar(k6).verdict);
}

TEST(NearPlanar, ExhaustiveAgreesWithOracle) {
    for (Vertex n = 1; n <= 6; ++n)
        for_all_graphs(n, [&](const Graph& g) {
            const auto w = is_near_planar(g);
            ASSERT_EQ(w.verdict, oracle_near_planar(g)) << to_text(g);
            ASSERT_EQ(near_planar_verdict(g, false), w.verdict);
        });
}

TEST(NearPlanar, WitnessIsFirstWorkingEdge) {
    RngState rng(5);
    int nonplanar_checked = 0;
    for (int t = 0; t < 3000; ++t) {
        const auto g = random_grid_graph(rng, 25, 3.0);
        const auto w = is_near_planar(g);
        if (is_planar(g)) {
            EXPECT_TRUE(w.verdict);
            EXPECT_FALSE(w.removed_edge.has_value());
            continue;
        }
        ++nonplanar_checked;
        std::optional<Edge> first;
        for (auto e : g.edges()) {
            const Edge one[] = {e};
            if (is_planar(remove_edges(g, one))) {
                first = e;
                break;
            }
        }
        EXPECT_EQ(w.verdict, first.has_value());
        EXPECT_EQ(w.removed_edge, first);
    }
    EXPECT_GT(nonplanar_checked, 100);
}

TEST(NearPlanar, FastPathNeverDisagrees) {
    RngState rng(6);
    for (int t = 0; t < 20000; ++t) {
        const Vertex n = static_cast<Vertex>(rng.uniform_below(20)) + 1;
        const auto m = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(std::min<std::int64_t>(11, pair_count(n))) + 1));
        const auto g = random_simple_graph(n, m, rng);
        ASSERT_TRUE(near_planar_verdict(g, false)) << to_text(g);
    }
}

TEST(NearPlanar, EdgeBoundShortCircuitAgreesWithOracle) {
    RngState rng(4);
    for (Vertex n = 3; n <= 7; ++n) {
        const auto m = 3 * n - 4;
        if (m > pair_count(n)) continue;
        for (int t = 0; t < 5; ++t) {
            const auto g = random_simple_graph(n, m, rng);
            EXPECT_FALSE(oracle_near_planar(g)) << to_text(g);
            EXPECT_FALSE(is_near_planar(g).verdict);
        }
    }
}

TEST(Hierarchy, HoldsOnRandomSamples) {
    RngState rng(31);
    for (int t = 0; t < 20000; ++t) {
        const auto g = random_grid_graph(rng, 80, 3.2);
        const bool acyc = is_acyclic(g);
        const bool outer = is_outerplanar(g);
        const bool planar = is_planar(g);
        const bool near = is_near_planar(g).verdict;
        ASSERT_TRUE(!acyc || outer) << to_text(g);
        ASSERT_TRUE(!outer || planar) << to_text(g);
        ASSERT_TRUE(!planar || near) << to_text(g);
        ASSERT_EQ(near, near_planar_verdict(g));
    }
}

TEST(SignificantInterval, Instances) {
    const auto planar = significant_interval(Property::planar, 200);
    EXPECT_DOUBLE_EQ(planar.lo, 0.045);
    EXPECT_DOUBLE_EQ(planar.hi, 2.97);
    const auto acyclic = significant_interval(Property::acyclic, 100);
    EXPECT_DOUBLE_EQ(acyclic.lo, 0.03);
    EXPECT_DOUBLE_EQ(acyclic.hi, 0.99);
    const auto near = significant_interval(Property::nearplanar, 100);
    EXPECT_DOUBLE_EQ(near.lo, 0.14);
    EXPECT_DOUBLE_EQ(near.hi, 2.95);
    const auto outer = significant_interval(Property::outerplanar, 100);
    EXPECT_DOUBLE_EQ(outer.lo, 0.06);
    EXPECT_DOUBLE_EQ(outer.hi, 1.97);
    EXPECT_THROW(significant_interval(Property::planar, 0), std::invalid_argument);
}

TEST(Kuratowski, KFiveWitness) {
    const auto g = complete_graph(5);
    const auto w = find_kuratowski_bruteforce(g);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->kind, KuratowskiWitness::Kind::k5);
    EXPECT_TRUE(verify_kuratowski_witness(g, *w));
}

TEST(Kuratowski, SubdividedKThreeThree) {
    const auto g = subdivide(complete_bipartite(3, 3), Edge{0, 3});
    const auto w = find_kuratowski_bruteforce(g);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->kind, KuratowskiWitness::Kind::k33);
    EXPECT_TRUE(verify_kuratowski_witness(g, *w));
    bool long_path = false;
    for (const auto& p : w->paths) long_path |= p.size() == 3;
    EXPECT_TRUE(long_path);
}

TEST(Kuratowski, WheelsArePlanar) {
    for (Vertex k = 4; k <= 8; ++k) EXPECT_FALSE(find_kuratowski_bruteforce(wheel_graph(k)).has_value()) << k;
}

TEST(Kuratowski, BudgetAndSmallInputs) {
    EXPECT_THROW(find_kuratowski_bruteforce(Graph(9, {})), BudgetExceeded);
    EXPECT_FALSE(find_kuratowski_bruteforce(complete_graph(4)).has_value());
}

TEST(Kuratowski, WitnessesVerifyOnRandomGraphs) {
    RngState rng(12);
    for (int t = 0; t < 500; ++t) {
        const auto g = random_simple_graph(7, 12 + static_cast<std::int64_t>(rng.uniform_below(6)), rng);
        if (auto w = find_kuratowski_bruteforce(g)) EXPECT_TRUE(verify_kuratowski_witness(g, *w)) << to_text(g);
    }
    // A tampered witness must be rejected.
    auto w = *find_kuratowski_bruteforce(complete_graph(5));
    w.paths[0] = {w.branch[0], w.branch[2]};
    EXPECT_FALSE(verify_kuratowski_witness(complete_graph(5), w));
}
