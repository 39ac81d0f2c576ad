#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tippinglab/experiment.hpp"

namespace tippinglab {

struct ContourPoint {
    Vertex n = 0;
    double density = 0;
    friend bool operator==(const ContourPoint&, const ContourPoint&) = default;
};

/// Iso-frequency line of a surface: at most one density per n, sorted by n.
struct ContourCurve {
    double height = 0.5;
    std::vector<ContourPoint> points;
};

/// For each n, scans densities upward and linearly interpolates inside the
/// first adjacent pair with freq_lo >= h >= freq_hi. A pair whose low end
/// equals h yields the low density. Skipped cells are ignored; n values with
/// no bracketing pair are omitted. Throws std::invalid_argument if h is not
/// in (0, 1) or no n has two measured densities.
ContourCurve contour(const FrequencySurface& surface, double height);

/// d(n) = 0.5 + c1 / n^c2 + c3 / n^(1/3)
struct TransitionParams {
    double c1 = 5.0;
    double c2 = 0.8;
    double c3 = 1.0;
};

double transition_model(double n, const TransitionParams& p);

/// Partial derivatives of transition_model with respect to (c1, c2, c3).
std::array<double, 3> jacobian_transition(double n, const TransitionParams& p);

struct FitOptions {
    int max_iterations = 500;
    double relative_tolerance = 1e-10;  // on the accepted residual decrease
    double gradient_tolerance = 1e-9;
    /// Contour points with n below this are left out of the fit.
    Vertex min_n = 0;
};

struct FitResult {
    TransitionParams params;
    double rss = 0;
    double gradient_norm = 0;
    int iterations = 0;
    bool converged = false;
    std::size_t points = 0;
};

/// Levenberg-Marquardt least squares of the curve's densities against
/// transition_model. Never throws on non-convergence; check `converged`.
/// Throws std::invalid_argument with fewer than 10 usable points or c2 <= 0.
FitResult fit_transition(const ContourCurve& curve, TransitionParams init = {}, const FitOptions& options = {});

/// Parameters of the sigmoid surrogate zeta / psi. c2 > 0, c4 > 0.
struct ZetaParams {
    double c1 = 5.0;
    double c2 = 0.5;
    double c3 = 20.0;
    double c4 = 0.5;
};

/// Exponents beyond this magnitude saturate zeta to exactly 0 or 1.
inline constexpr double kZetaExponentCutoff = 1024.0;

/// p = 1 / (2^((d - (0.5 + c1/n^c2)) * (c3 + c4 n^(1/3))) + 1)
double zeta(double n, double d, const ZetaParams& params);

/// Inverse of zeta in d:
/// d = log2(1/p - 1) / (c3 + c4 n^(1/3)) + 0.5 + c1/n^c2.
/// Throws std::invalid_argument unless 0 < p < 1.
double psi(double n, double p, const ZetaParams& params);

/// (psi(n, p_min) - psi(n, p_max)) / n^(-1/3), i.e.
/// (log2(1/p_min - 1) - log2(1/p_max - 1)) / (c3 n^(-1/3) + c4).
/// Throws std::invalid_argument unless 0 < p_min < p_max < 1.
double transition_width_ratio(double n, double p_min, double p_max, const ZetaParams& params);

/// Limit of transition_width_ratio as n grows.
double transition_width_limit(double p_min, double p_max, const ZetaParams& params);

/// Contour curve CSV: header "n,density" then one row per point.
void write_curve(const std::filesystem::path& path, const ContourCurve& curve);
ContourCurve read_curve(const std::filesystem::path& path);

/// JSON object with c1, c2, c3, rss, iterations, converged and model.
std::string fit_to_json(const FitResult& fit);

}  // namespace tippinglab
