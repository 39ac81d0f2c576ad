#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "tippinglab/analysis.hpp"

using namespace tippinglab;

namespace {

Decimal dec(const char* s) { return Decimal::parse(s); }

FrequencySurface surface_from(std::vector<std::tuple<Vertex, const char*, std::int64_t>> cells, std::int64_t samples = 100) {
    FrequencySurface s;
    s.property = Property::planar;
    for (auto [n, d, pos] : cells) {
        const auto density = dec(d);
        s.rows.push_back({n, density, (n * density.units() + 500'000) / 1'000'000, samples, pos});
    }
    return s;
}

ContourCurve synthetic_curve(const TransitionParams& truth, Vertex lo, Vertex hi, Vertex step) {
    ContourCurve c;
    for (Vertex n = lo; n <= hi; n += step) c.points.push_back({n, transition_model(n, truth)});
    return c;
}

}  // namespace

TEST(Contour, MidpointInterpolation) {
    const auto c = contour(surface_from({{10, "0.5", 100}, {10, "0.6", 0}}), 0.5);
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_EQ(c.points[0].n, 10);
    EXPECT_NEAR(c.points[0].density, 0.55, 1e-12);
}

TEST(Contour, ExactHeightHitsCell) {
    const auto c = contour(surface_from({{10, "0.4", 100}, {10, "0.5", 70}, {10, "0.6", 20}}), 0.7);
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_DOUBLE_EQ(c.points[0].density, 0.5);
}

TEST(Contour, FirstBracketWinsAndMissingColumnsOmitted) {
    // Noisy column: crosses 0.5 twice; the lower crossing is reported.
    const auto c = contour(surface_from({{10, "0.1", 100}, {10, "0.2", 40}, {10, "0.3", 60}, {10, "0.4", 0},
                                         {20, "0.1", 100}, {20, "0.2", 90},
                                         {30, "0.1", 90}}),
                           0.5);
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_NEAR(c.points[0].density, 0.1 + 0.1 * (50.0 / 60.0), 1e-12);
}

TEST(Contour, Errors) {
    const auto s = surface_from({{10, "0.5", 100}, {10, "0.6", 0}});
    EXPECT_THROW(contour(s, 0.0), std::invalid_argument);
    EXPECT_THROW(contour(s, 1.0), std::invalid_argument);
    EXPECT_THROW(contour(surface_from({{10, "0.5", 100}, {20, "0.6", 0}}), 0.5), std::invalid_argument);
}

TEST(Contour, SkippedCellsIgnored) {
    auto s = surface_from({{10, "0.5", 100}, {10, "0.6", 0}});
    s.rows.insert(s.rows.begin() + 1, SurfaceRow{10, dec("0.55"), 6, 0, 0});
    EXPECT_NEAR(contour(s, 0.5).points.at(0).density, 0.55, 1e-12);
}

TEST(ContourProperty, InvariantUnderRowPermutation) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        FrequencySurface s;
        for (Vertex n = 5; n <= 50; n += 5) {
            std::int64_t pos = 1000;
            for (int d = 0; d <= 20; ++d) {
                pos = std::max<std::int64_t>(0, pos - static_cast<std::int64_t>(rng() % 150) + 20);
                pos = std::min<std::int64_t>(pos, 1000);
                const auto density = Decimal::from_units(d * 100'000);
                s.rows.push_back({n, density, (n * density.units() + 500'000) / 1'000'000, 1000, pos});
            }
        }
        const double h = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
        const auto base = contour(s, h);
        std::shuffle(s.rows.begin(), s.rows.end(), rng);
        const auto shuffled = contour(s, h);
        ASSERT_EQ(base.points, shuffled.points);
        for (std::size_t i = 1; i < base.points.size(); ++i) EXPECT_LT(base.points[i - 1].n, base.points[i].n);
        for (const auto& p : base.points) {
            EXPECT_GE(p.density, 0.0);
            EXPECT_LE(p.density, 2.0);
        }
    }
}

TEST(Jacobian, ClosedFormCases) {
    const auto at_one = jacobian_transition(1, {4.0, 0.8, 1.2});
    EXPECT_DOUBLE_EQ(at_one[0], 1.0);
    EXPECT_DOUBLE_EQ(at_one[1], 0.0);
    EXPECT_DOUBLE_EQ(at_one[2], 1.0);
    EXPECT_EQ(jacobian_transition(77, {0.0, 0.9, 3.0})[1], 0.0);
}

TEST(Jacobian, MatchesCentralDifferences) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> n_dist(2, 1000), c1(-10, 10), c2(0.1, 2), c3(-5, 5);
    for (int t = 0; t < 100; ++t) {
        const double n = n_dist(rng);
        const TransitionParams p{c1(rng), c2(rng), c3(rng)};
        const auto j = jacobian_transition(n, p);
        for (int k = 0; k < 3; ++k) {
            auto up = p, down = p;
            double* fields_up[] = {&up.c1, &up.c2, &up.c3};
            double* fields_down[] = {&down.c1, &down.c2, &down.c3};
            const double h = 1e-6 * std::max(1.0, std::abs(*fields_up[k]));
            *fields_up[k] += h;
            *fields_down[k] -= h;
            const double fd = (transition_model(n, up) - transition_model(n, down)) / (2 * h);
            EXPECT_NEAR(j[k], fd, 1e-6 * std::max(std::abs(fd), 1e-3)) << "k=" << k << " n=" << n;
        }
    }
}

TEST(Fit, RecoversSyntheticParameters) {
    const TransitionParams truth{4.0, 0.8, 1.2};
    const auto fit = fit_transition(synthetic_curve(truth, 20, 400, 20));
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.params.c1, 4.0, 1e-6);
    EXPECT_NEAR(fit.params.c2, 0.8, 1e-6);
    EXPECT_NEAR(fit.params.c3, 1.2, 1e-6);
    EXPECT_LT(fit.rss, 1e-18);
    EXPECT_EQ(fit.points, 20u);
}

TEST(Fit, RecoversFromPerturbedStarts) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> factor(0.5, 1.5);
    const TransitionParams truths[] = {{4.0, 0.8, 1.2}, {4.28796, 0.80709, 1.20455}, {7.84819, 1.01034, 2.20906},
                                       {3.65264, 0.68018, -0.01296}};
    for (const auto& truth : truths) {
        const auto curve = synthetic_curve(truth, 10, 400, 10);
        for (int t = 0; t < 25; ++t) {
            const TransitionParams init{truth.c1 * factor(rng), truth.c2 * factor(rng), truth.c3 * factor(rng)};
            const auto fit = fit_transition(curve, init);
            EXPECT_TRUE(fit.converged);
            EXPECT_NEAR(fit.params.c1, truth.c1, 1e-6);
            EXPECT_NEAR(fit.params.c2, truth.c2, 1e-6);
            EXPECT_NEAR(fit.params.c3, truth.c3, 1e-6);
        }
    }
}

TEST(Fit, ResidualNeverIncreases) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> noise(0, 0.01);
    auto curve = synthetic_curve({4.28796, 0.80709, 1.20455}, 20, 400, 20);
    for (auto& p : curve.points) p.density += noise(rng);
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 60; ++k) {
        FitOptions options;
        options.max_iterations = k;
        const auto fit = fit_transition(curve, {}, options);
        EXPECT_LE(fit.rss, previous) << k;
        previous = fit.rss;
    }
}

TEST(Fit, ConvergedImpliesSmallGradient) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0, 0.02);
    int converged = 0;
    for (int t = 0; t < 50; ++t) {
        auto curve = synthetic_curve({4.28796, 0.80709, 1.20455}, 10, 400, 10);
        for (auto& p : curve.points) p.density += noise(rng);
        const auto fit = fit_transition(curve);
        EXPECT_TRUE(std::isfinite(fit.rss));
        if (fit.converged) {
            EXPECT_LT(fit.gradient_norm, FitOptions{}.gradient_tolerance);
            ++converged;
        }
    }
    EXPECT_EQ(converged, 50);
}

TEST(Fit, IsDeterministic) {
    auto curve = synthetic_curve({5, 0.9, 1}, 20, 400, 20);
    curve.points[3].density += 0.01;
    const auto a = fit_transition(curve);
    const auto b = fit_transition(curve);
    EXPECT_EQ(a.params.c1, b.params.c1);
    EXPECT_EQ(a.params.c2, b.params.c2);
    EXPECT_EQ(a.params.c3, b.params.c3);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Fit, Errors) {
    EXPECT_THROW(fit_transition(synthetic_curve({4, 0.8, 1.2}, 10, 90, 10)), std::invalid_argument);
    EXPECT_THROW(fit_transition(synthetic_curve({4, 0.8, 1.2}, 10, 400, 10), {4, 0.0, 1}), std::invalid_argument);
    FitOptions options;
    options.min_n = 350;
    EXPECT_THROW(fit_transition(synthetic_curve({4, 0.8, 1.2}, 10, 400, 10), {}, options), std::invalid_argument);
}

TEST(Fit, NonConvergenceIsReportedNotThrown) {
    FitOptions options;
    options.max_iterations = 1;
    const auto fit = fit_transition(synthetic_curve({4, 0.8, 1.2}, 10, 400, 10), {50, 3, -4}, options);
    EXPECT_FALSE(fit.converged);
    EXPECT_EQ(fit.iterations, 1);
}

TEST(Fit, MinNFilter) {
    auto curve = synthetic_curve({4, 0.8, 1.2}, 1, 400, 1);
    curve.points[0].density = 50;  // wild small-n point
    FitOptions options;
    options.min_n = 10;
    const auto fit = fit_transition(curve, {}, options);
    EXPECT_EQ(fit.points, 391u);
    EXPECT_NEAR(fit.params.c1, 4, 1e-6);
}

TEST(Fit, JsonKeys) {
    const auto json = fit_to_json(fit_transition(synthetic_curve({4, 0.8, 1.2}, 10, 400, 10)));
    for (const char* key : {"\"c1\"", "\"c2\"", "\"c3\"", "\"rss\"", "\"iterations\"", "\"converged\"", "\"model\""})
        EXPECT_NE(json.find(key), std::string::npos) << key;
    EXPECT_NE(json.find("0.5 + c1/n^c2 + c3/n^(1/3)"), std::string::npos);
}

TEST(Curve, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "tippinglab_curve.csv";
    ContourCurve c{0.5, {{10, 1.25}, {20, 0.1 + 0.2}, {400, 0.6180339887498949}}};
    write_curve(path, c);
    EXPECT_EQ(read_curve(path).points, c.points);
}

TEST(Zeta, ZeroExponentGivesHalf) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    for (double n : {1.0, 10.0, 400.0, 1e9}) EXPECT_DOUBLE_EQ(zeta(n, 0.5 + 5 / std::pow(n, 0.5), params), 0.5);
    const ZetaParams other{-2, 1.3, 0.1, 3};
    EXPECT_DOUBLE_EQ(zeta(50, 0.5 - 2 / std::pow(50, 1.3), other), 0.5);
}

TEST(Zeta, LargeNAboveHalfGoesToZero) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    EXPECT_LT(zeta(1e9, 0.6, params), 1e-15);
    EXPECT_EQ(zeta(1e15, 0.6, params), 0.0);  // saturated
    EXPECT_EQ(zeta(1e15, 0.4, params), 1.0);
    EXPECT_GT(zeta(1e9, 0.6, params), 0.0);
}

TEST(Zeta, PsiRoundTrip) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    for (double n : {1.0, 7.0, 200.0, 1e6})
        for (double p : {0.1, 0.5, 0.9}) EXPECT_NEAR(zeta(n, psi(n, p, params), params), p, 1e-12);
}

TEST(Zeta, PsiRoundTripRandomDomain) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> c1(-10, 10), c2(0.05, 2), c3(0, 30), c4(0.05, 3), logn(0, 9), p(0.001, 0.999);
    for (int t = 0; t < 10000; ++t) {
        const ZetaParams params{c1(rng), c2(rng), c3(rng), c4(rng)};
        const double n = std::pow(10.0, logn(rng));
        const double q = p(rng);
        ASSERT_NEAR(zeta(n, psi(n, q, params), params), q, 1e-12) << n << " " << q;
    }
}

TEST(Psi, HalfAndLimit) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    for (double n : {1.0, 4.0, 100.0}) EXPECT_DOUBLE_EQ(psi(n, 0.5, params), 0.5 + 5 / std::pow(n, 0.5));
    const double far = psi(1e12, 0.5, params) - 0.5;
    EXPECT_NEAR(far, 5e-6, 1e-15);
    EXPECT_LT(far, 1e-5);
    EXPECT_THROW(psi(10, 0.0, params), std::invalid_argument);
    EXPECT_THROW(psi(10, 1.0, params), std::invalid_argument);
}

TEST(Psi, DecreasingInProbability) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    for (double n : {2.0, 50.0, 1e5}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k < 100; ++k) {
            const double d = psi(n, k / 100.0, params);
            EXPECT_LT(d, prev);
            prev = d;
        }
    }
}

TEST(Width, ClosedFormLimit) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    const double limit = transition_width_limit(0.1, 0.9, params);
    EXPECT_NEAR(limit, 2 * std::log2(81.0), 1e-12);
    EXPECT_NEAR(limit, 12.6797, 1e-4);
    const ZetaParams small_c3{10, 0.5, 1, 0.5};
    EXPECT_NEAR(transition_width_ratio(1e12, 0.1, 0.9, small_c3) / limit, 1.0, 1e-3);
    EXPECT_THROW(transition_width_ratio(10, 0.9, 0.1, params), std::invalid_argument);
    EXPECT_THROW(transition_width_ratio(10, 0.5, 0.5, params), std::invalid_argument);
}

TEST(Width, MatchesPsiDifference) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    for (double n : {8.0, 1000.0, 1e6}) {
        const double direct = (psi(n, 0.1, params) - psi(n, 0.9, params)) / std::pow(n, -1.0 / 3.0);
        EXPECT_NEAR(transition_width_ratio(n, 0.1, 0.9, params), direct, 1e-9 * direct);
    }
}

TEST(Width, SymmetricNumerator) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    for (double p : {0.01, 0.2, 0.4}) {
        const double ratio = transition_width_ratio(1000, p, 1 - p, params);
        EXPECT_NEAR(ratio * (params.c3 / 10.0 + params.c4), 2 * std::log2(1 / p - 1), 1e-12);
    }
}

// With c3 > 0 the ratio approaches its limit from below, and the gap shrinks.
TEST(Width, ApproachesLimitMonotonically) {
    const ZetaParams params{5, 0.5, 20, 0.5};
    const double limit = transition_width_limit(0.1, 0.9, params);
    double previous_gap = std::numeric_limits<double>::infinity();
    for (double n = 1; n < 1e15; n *= 8) {
        const double gap = limit - transition_width_ratio(n, 0.1, 0.9, params);
        EXPECT_GT(gap, 0);
        EXPECT_LT(gap, previous_gap);
        previous_gap = gap;
    }
}
