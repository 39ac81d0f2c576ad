#include "tippinglab/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace tippinglab {

ContourCurve contour(const FrequencySurface& surface, double height) {
    if (!(height > 0 && height < 1)) throw std::invalid_argument("contour height must lie in (0, 1)");

    std::map<Vertex, std::vector<std::pair<Decimal, double>>> columns;
    for (const auto& row : surface.rows)
        if (!row.skipped()) columns[row.n].emplace_back(row.density, row.frequency());

    ContourCurve curve{height, {}};
    bool any_pair = false;
    for (auto& [n, cells] : columns) {
        std::sort(cells.begin(), cells.end());
        if (cells.size() < 2) continue;
        any_pair = true;
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
            const auto [d_lo, f_lo] = cells[i];
            const auto [d_hi, f_hi] = cells[i + 1];
            if (!(f_lo >= height && height >= f_hi)) continue;
            double d = d_lo.to_double();
            if (f_lo > f_hi) {
                const double t = (f_lo - height) / (f_lo - f_hi);
                d += t * (d_hi.to_double() - d_lo.to_double());
            }
            curve.points.push_back({n, d});
            break;
        }
    }
    if (!any_pair) throw std::invalid_argument("surface too sparse: no n has two measured densities");
    return curve;
}

double transition_model(double n, const TransitionParams& p) {
    return 0.5 + p.c1 * std::pow(n, -p.c2) + p.c3 * std::pow(n, -1.0 / 3.0);
}

std::array<double, 3> jacobian_transition(double n, const TransitionParams& p) {
    const double power = std::pow(n, -p.c2);
    return {power, -p.c1 * std::log(n) * power, std::pow(n, -1.0 / 3.0)};
}

namespace {

struct Evaluation {
    Eigen::VectorXd residual;
    Eigen::MatrixXd jacobian;
    double rss = 0;
};

Evaluation evaluate(const std::vector<ContourPoint>& pts, const TransitionParams& p) {
    Evaluation ev;
    const auto k = static_cast<Eigen::Index>(pts.size());
    ev.residual.resize(k);
    ev.jacobian.resize(k, 3);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double n = pts[i].n;
        ev.residual(i) = transition_model(n, p) - pts[i].density;
        const auto j = jacobian_transition(n, p);
        ev.jacobian.row(i) << j[0], j[1], j[2];
    }
    ev.rss = ev.residual.squaredNorm();
    return ev;
}

}  // namespace

FitResult fit_transition(const ContourCurve& curve, TransitionParams init, const FitOptions& options) {
    std::vector<ContourPoint> pts;
    for (const auto& p : curve.points)
        if (p.n >= options.min_n) pts.push_back(p);
    if (pts.size() < 10) throw std::invalid_argument("fit_transition needs at least 10 points, got " + std::to_string(pts.size()));
    if (!(init.c2 > 0)) throw std::invalid_argument("fit_transition needs an initial c2 > 0");

    FitResult result;
    result.points = pts.size();
    TransitionParams x = init;
    auto ev = evaluate(pts, x);
    double lambda = 1e-3;
    constexpr int kMaxStalledSteps = 10;
    int stalled = 0;

    for (result.iterations = 0; result.iterations < options.max_iterations;) {
        const Eigen::Vector3d gradient = ev.jacobian.transpose() * ev.residual;
        result.gradient_norm = gradient.norm();
        if (result.gradient_norm < options.gradient_tolerance) {
            result.converged = true;
            break;
        }
        ++result.iterations;
        const Eigen::Matrix3d normal = ev.jacobian.transpose() * ev.jacobian;

        bool accepted = false;
        double previous_rss = ev.rss;
        while (lambda < 1e20) {
            Eigen::Matrix3d damped = normal;
            for (int i = 0; i < 3; ++i) damped(i, i) += lambda * std::max(normal(i, i), 1e-12);
            const Eigen::Vector3d step = damped.ldlt().solve(-gradient);
            const TransitionParams trial{x.c1 + step(0), x.c2 + step(1), x.c3 + step(2)};
            auto trial_ev = evaluate(pts, trial);
            if (std::isfinite(trial_ev.rss) && trial_ev.rss < ev.rss) {
                x = trial;
                ev = std::move(trial_ev);
                lambda = std::max(lambda / 10, 1e-15);
                accepted = true;
                break;
            }
            lambda *= 10;
        }
        if (!accepted) break;  // no descent direction left at machine precision
        // Near the optimum the residual stalls a few steps before the gradient
        // settles, so only a persistent stall ends the iteration.
        if ((previous_rss - ev.rss) < options.relative_tolerance * previous_rss) {
            if (++stalled >= kMaxStalledSteps) break;
        } else {
            stalled = 0;
        }
    }
    if (!result.converged) {
        const Eigen::Vector3d g = ev.jacobian.transpose() * ev.residual;
        result.gradient_norm = g.norm();
        result.converged = result.gradient_norm < options.gradient_tolerance;
    }
    result.params = x;
    result.rss = ev.rss;
    return result;
}

double zeta(double n, double d, const ZetaParams& params) {
    const double exponent = (d - (0.5 + params.c1 / std::pow(n, params.c2))) * (params.c3 + params.c4 * std::cbrt(n));
    if (exponent > kZetaExponentCutoff) return 0.0;
    if (exponent < -kZetaExponentCutoff) return 1.0;
    return 1.0 / (std::exp2(exponent) + 1.0);
}

double psi(double n, double p, const ZetaParams& params) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("psi requires 0 < p < 1");
    return std::log2(1.0 / p - 1.0) / (params.c3 + params.c4 * std::cbrt(n)) + (0.5 + params.c1 / std::pow(n, params.c2));
}

namespace {

double width_numerator(double p_min, double p_max) {
    if (!(p_min > 0 && p_min < p_max && p_max < 1))
        throw std::invalid_argument("transition width requires 0 < p_min < p_max < 1");
    return std::log2(1.0 / p_min - 1.0) - std::log2(1.0 / p_max - 1.0);
}

}  // namespace

double transition_width_ratio(double n, double p_min, double p_max, const ZetaParams& params) {
    return width_numerator(p_min, p_max) / (params.c3 / std::cbrt(n) + params.c4);
}

double transition_width_limit(double p_min, double p_max, const ZetaParams& params) {
    return width_numerator(p_min, p_max) / params.c4;
}

namespace {

std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace

void write_curve(const std::filesystem::path& path, const ContourCurve& curve) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "n,density\n";
    for (const auto& p : curve.points) out << p.n << ',' << shortest(p.density) << '\n';
    if (!out) throw std::runtime_error("write failed on " + path.string());
}

ContourCurve read_curve(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "n,density") throw std::runtime_error(path.string() + ": line 1: expected header 'n,density'");
    ContourCurve curve;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        ContourPoint p;
        bool ok = comma != std::string::npos;
        if (ok) {
            auto [p1, e1] = std::from_chars(line.data(), line.data() + comma, p.n);
            auto [p2, e2] = std::from_chars(line.data() + comma + 1, line.data() + line.size(), p.density);
            ok = e1 == std::errc{} && e2 == std::errc{} && p1 == line.data() + comma && p2 == line.data() + line.size();
        }
        if (!ok) throw std::runtime_error(path.string() + ": line " + std::to_string(lineno) + ": malformed row");
        curve.points.push_back(p);
    }
    return curve;
}

std::string fit_to_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["c1"] = fit.params.c1;
    j["c2"] = fit.params.c2;
    j["c3"] = fit.params.c3;
    j["rss"] = fit.rss;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["gradient_norm"] = fit.gradient_norm;
    j["points"] = fit.points;
    j["model"] = "0.5 + c1/n^c2 + c3/n^(1/3)";
    return j.dump(2) + "\n";
}

}  // namespace tippinglab
