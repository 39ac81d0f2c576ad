#include "tippinglab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tippinglab/analysis.hpp"
#include "tippinglab/exact.hpp"
#include "tippinglab/manifest.hpp"
#include "tippinglab/random.hpp"
#include "tippinglab/recognizers.hpp"
#include "tippinglab/surface_io.hpp"

namespace tippinglab {

AcyclicValidation validate_acyclic(const FrequencySurface& surface) {
    if (surface.property != Property::acyclic)
        throw std::invalid_argument("validate-acyclic needs an acyclic surface, got " + std::string(to_string(surface.property)));
    AcyclicValidation v;
    double abs_sum = 0;
    double signed_sum = 0;
    for (const auto& row : surface.rows) {
        if (row.skipped()) continue;
        const double exact = acyclic_probability(row.n, row.m).convert_to<double>();
        const double diff = row.frequency() - exact;
        abs_sum += std::abs(diff);
        signed_sum += diff;
        if (std::abs(diff) > v.peak_abs_error || v.cells == 0) {
            v.peak_abs_error = std::abs(diff);
            v.peak_n = row.n;
            v.peak_density = row.density;
        }
        ++v.cells;
    }
    if (v.cells > 0) {
        v.mean_abs_error = abs_sum / static_cast<double>(v.cells);
        v.signed_mean_error = signed_sum / static_cast<double>(v.cells);
    }
    return v;
}

std::string validation_to_json(const AcyclicValidation& v) {
    nlohmann::ordered_json j;
    j["cells"] = v.cells;
    j["mean_abs_error"] = v.mean_abs_error;
    j["peak_abs_error"] = v.peak_abs_error;
    j["peak_n"] = v.peak_n;
    j["peak_density"] = v.peak_density.to_string();
    j["signed_mean_error"] = v.signed_mean_error;
    return j.dump(2) + "\n";
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::filesystem::path resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("TIPPINGLAB_CACHE"); env && *env) return env;
    return "tippinglab-results";
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string full_precision(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

/// Runs a sweep into `dir` and records manifest.json.
std::vector<FrequencySurface> sweep_to_dir(const ExperimentPlan& plan, unsigned workers, const std::filesystem::path& dir,
                                           bool resume, const std::vector<std::string>& command, std::ostream& err,
                                           bool show_progress) {
    RunManifest manifest;
    manifest.tool_version = TIPPINGLAB_VERSION;
    manifest.command = command;
    manifest.plan = plan;
    manifest.workers = workers;
    manifest.started_utc = utc_timestamp();

    SweepOptions options;
    options.workers = workers;
    options.out_dir = dir;
    options.resume = resume;
    if (show_progress) {
        options.progress = [&err](std::size_t done, std::size_t total) {
            if (done == total || done % 50 == 0) err << "\rcells " << done << "/" << total << std::flush;
            if (done == total) err << "\n";
        };
    }
    auto surfaces = run_sweep(plan, options);
    manifest.finished_utc = utc_timestamp();
    for (auto p : plan.properties) {
        const auto path = surface_path(dir, p);
        manifest.outputs[path.filename().string()] = sha256_file(path);
    }
    write_manifest(dir, manifest);
    return surfaces;
}

struct PlanFlags {
    std::vector<std::string> properties;
    Vertex n_min = 0, n_max = 0, n_step = 1;
    std::vector<Vertex> n_list;
    std::string d_min, d_max, d_step;
    std::int64_t samples = 0;
    std::uint64_t seed = 1;
    bool paper_scale = false;

    void add_to(CLI::App* cmd, bool with_property) {
        if (with_property)
            cmd->add_option("--property", properties, "acyclic|planar|outerplanar|nearplanar; comma list measures several on the same graphs")
                ->required()
                ->delimiter(',');
        cmd->add_option("--n-min", n_min, "smallest vertex count");
        cmd->add_option("--n-max", n_max, "largest vertex count");
        cmd->add_option("--n-step", n_step, "vertex count step")->check(CLI::PositiveNumber);
        cmd->add_option("--n-list", n_list, "explicit vertex counts (comma separated)")->delimiter(',');
        cmd->add_option("--d-min", d_min, "smallest density (decimal)");
        cmd->add_option("--d-max", d_max, "largest density (decimal)");
        cmd->add_option("--d-step", d_step, "density step (decimal)");
        cmd->add_option("--samples", samples, "graphs per cell (default 1000, 10000 with --paper-scale)");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_flag("--paper-scale", paper_scale, "10,000 samples per cell");
    }

    ExperimentPlan resolve(std::vector<Property> props) const {
        if (props.empty()) {
            for (const auto& p : properties) props.push_back(parse_property(p));
        }
        if (props.empty()) throw UsageError("no property given");
        auto plan = default_plan(props.front());
        plan.properties = props;
        plan.samples = samples > 0 ? samples : (paper_scale ? kPaperSamples : kDeskSamples);
        plan.seed = seed;
        if (!n_list.empty()) {
            plan.n_values = n_list;
        } else if (n_min > 0 || n_max > 0 || n_step != 1) {
            plan.n_values = n_range(n_min > 0 ? n_min : 1, n_max > 0 ? n_max : plan.n_values.back(), n_step);
        }
        try {
            if (!d_min.empty()) plan.density_min = Decimal::parse(d_min);
            if (!d_max.empty()) plan.density_max = Decimal::parse(d_max);
            if (!d_step.empty()) plan.density_step = Decimal::parse(d_step);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        try {
            plan.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return plan;
    }
};

std::string read_all(std::istream& in) {
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string acyclic_oracle_csv(Vertex n, Decimal d_min, Decimal d_max, Decimal step) {
    std::string csv = "n,density,m,probability\n";
    for (auto d = d_min; d <= d_max; d = d + step) {
        const auto count = edge_count(n, d);
        if (!count.feasible) continue;
        csv += std::to_string(n) + "," + d.to_string() + "," + std::to_string(count.m) + "," +
               to_decimal_string(acyclic_probability(n, count.m)) + "\n";
    }
    return csv;
}

/// The bundled desk-scale reproduction: one directory per figure analog.
void run_repro(const std::filesystem::path& root, std::int64_t samples, Vertex n_max, std::uint64_t seed,
               unsigned workers, const std::vector<std::string>& command, std::ostream& out, std::ostream& err) {
    struct Experiment {
        Property property;
        const char* dir;
    };
    const Experiment experiments[] = {
        {Property::acyclic, "fig2a_acyclic"},
        {Property::planar, "fig2b_fig3_fig4_planar"},
        {Property::outerplanar, "fig5a_outerplanar"},
        {Property::nearplanar, "fig5b_nearplanar"},
    };
    for (const auto& ex : experiments) {
        auto plan = default_plan(ex.property);
        plan.samples = samples;
        plan.seed = seed;
        if (n_max > 0 && n_max < plan.n_values.back()) plan.n_values = n_range(1, n_max);
        const auto dir = root / ex.dir;
        std::filesystem::create_directories(dir);
        err << "repro: " << to_string(ex.property) << " -> " << dir.string() << "\n";
        const auto surfaces = sweep_to_dir(plan, workers, dir, false, command, err, true);
        const auto& surface = surfaces.front();

        if (ex.property == Property::acyclic) {
            std::string csv = "n,density,m,probability\n";
            for (auto n : plan.n_values) {
                auto part = acyclic_oracle_csv(n, plan.density_min, plan.density_max, plan.density_step);
                csv += part.substr(part.find('\n') + 1);
            }
            write_text(dir / "exact_probability.csv", csv);
            write_text(dir / "validation.json", validation_to_json(validate_acyclic(surface)));
        }
        if (ex.property == Property::planar) {
            for (int pct = 10; pct <= 90; pct += 10)
                write_curve(dir / ("contour_" + std::to_string(pct) + ".csv"), contour(surface, pct / 100.0));
            std::map<int, FitResult> fits;
            for (int pct : {1, 50, 99}) {
                const auto curve = contour(surface, pct / 100.0);
                write_curve(dir / ("contour_" + std::to_string(pct) + ".csv"), curve);
                if (curve.points.size() >= 10) {
                    fits[pct] = fit_transition(curve);
                    write_text(dir / ("fit_" + std::to_string(pct) + ".json"), fit_to_json(fits[pct]));
                }
            }
            if (fits.count(1) && fits.count(99)) {
                std::string csv = "n,f1,f99,difference\n";
                for (auto n : plan.n_values) {
                    const double f1 = transition_model(n, fits[1].params);
                    const double f99 = transition_model(n, fits[99].params);
                    csv += std::to_string(n) + "," + full_precision(f1) + "," + full_precision(f99) + "," +
                           full_precision(f1 - f99) + "\n";
                }
                write_text(dir / "transition_width.csv", csv);
            }
        }
    }
    out << root.string() << "\n";
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"tippinglab: density-driven planarity transitions in random G(n, m) graphs", "tippinglab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TIPPINGLAB_VERSION);

    // gen
    auto* gen = app.add_subcommand("gen", "print a uniform random G(n, m) graph in text format");
    Vertex gen_n = 0;
    std::int64_t gen_m = 0;
    std::uint64_t gen_seed = 1;
    gen->add_option("--n", gen_n, "vertex count")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--m", gen_m, "edge count")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_seed, "generator seed");

    // test
    auto* test = app.add_subcommand("test", "decide a property for a graph in text format");
    std::string test_property;
    std::string test_in;
    test->add_option("--property", test_property, "acyclic|planar|outerplanar|nearplanar")->required();
    test->add_option("--in", test_in, "graph file (default: stdin)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "measure a property frequency surface over an (n, density) grid");
    PlanFlags sweep_flags;
    sweep_flags.add_to(sweep, true);
    unsigned sweep_workers = default_workers();
    std::string sweep_out;
    bool sweep_resume = false;
    sweep->add_option("--workers", sweep_workers, "worker threads (default: CPUs)")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "output directory (default: $TIPPINGLAB_CACHE or ./tippinglab-results)");
    sweep->add_flag("--resume", sweep_resume, "continue from surface files already in the output directory");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact probabilities");
    std::string oracle_kind;
    Vertex oracle_n = 0;
    std::string oracle_dmin = "0.0", oracle_dmax = "1.0", oracle_step = "0.05";
    oracle->add_option("kind", oracle_kind, "acyclic")->required()->check(CLI::IsMember({"acyclic"}));
    oracle->add_option("--n", oracle_n, "vertex count")->required()->check(CLI::PositiveNumber);
    oracle->add_option("--dmin", oracle_dmin, "smallest density");
    oracle->add_option("--dmax", oracle_dmax, "largest density");
    oracle->add_option("--step", oracle_step, "density step");

    // contour
    auto* contour_cmd = app.add_subcommand("contour", "extract an iso-frequency line from a surface");
    std::string contour_in, contour_out;
    double contour_height = 0.5;
    contour_cmd->add_option("--in", contour_in, "surface CSV")->required();
    contour_cmd->add_option("--height", contour_height, "frequency level in (0, 1)")->required();
    contour_cmd->add_option("--out", contour_out, "curve CSV (default: stdout)");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit d = 0.5 + c1/n^c2 + c3/n^(1/3) to a contour curve");
    std::string fit_in, fit_out;
    TransitionParams fit_init;
    Vertex fit_min_n = 0;
    fit_cmd->add_option("--in", fit_in, "curve CSV")->required();
    fit_cmd->add_option("--out", fit_out, "fit JSON (default: stdout)");
    fit_cmd->add_option("--c1", fit_init.c1, "initial c1");
    fit_cmd->add_option("--c2", fit_init.c2, "initial c2 (> 0)");
    fit_cmd->add_option("--c3", fit_init.c3, "initial c3");
    fit_cmd->add_option("--min-n", fit_min_n, "ignore points with smaller n");

    // model
    auto* model = app.add_subcommand("model", "evaluate zeta, psi or the transition width ratio");
    std::string model_kind;
    ZetaParams zp;
    double model_n = 1, model_d = 0, model_p = 0.5, model_pmin = 0.1, model_pmax = 0.9;
    model->add_option("kind", model_kind, "zeta|psi|width")->required()->check(CLI::IsMember({"zeta", "psi", "width"}));
    model->add_option("--c1", zp.c1);
    model->add_option("--c2", zp.c2)->check(CLI::PositiveNumber);
    model->add_option("--c3", zp.c3);
    model->add_option("--c4", zp.c4)->check(CLI::PositiveNumber);
    model->add_option("--n", model_n)->required();
    model->add_option("--d", model_d, "density (zeta)");
    model->add_option("--p", model_p, "probability (psi)");
    model->add_option("--p-min", model_pmin, "width: lower probability");
    model->add_option("--p-max", model_pmax, "width: upper probability");

    // validate-acyclic
    auto* validate = app.add_subcommand("validate-acyclic", "compare an acyclicity surface with exact probabilities");
    std::string validate_in;
    PlanFlags validate_flags;
    unsigned validate_workers = default_workers();
    validate->add_option("--in", validate_in, "acyclic surface CSV; without it a sweep is run from the plan flags");
    validate_flags.add_to(validate, false);
    validate->add_option("--workers", validate_workers)->check(CLI::PositiveNumber);

    // repro
    auto* repro = app.add_subcommand("repro", "run all four experiments at desk scale, one directory per figure");
    std::string repro_out;
    std::int64_t repro_samples = kDeskSamples;
    Vertex repro_n_max = 0;
    std::uint64_t repro_seed = 1;
    unsigned repro_workers = default_workers();
    repro->add_option("--out", repro_out, "root output directory");
    repro->add_option("--samples", repro_samples, "graphs per cell")->check(CLI::PositiveNumber);
    repro->add_option("--n-max", repro_n_max, "cap on vertex count");
    repro->add_option("--seed", repro_seed);
    repro->add_option("--workers", repro_workers)->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::vector<std::string> command{"tippinglab"};
    command.insert(command.end(), args.begin(), args.end());

    try {
        if (*gen) {
            if (gen_m > pair_count(gen_n)) throw UsageError("m exceeds C(n, 2)");
            RngState rng(gen_seed);
            out << to_text(random_simple_graph(gen_n, gen_m, rng));
        } else if (*test) {
            Property p;
            try {
                p = parse_property(test_property);
            } catch (const UnknownProperty& e) {
                throw UsageError(e.what());
            }
            std::string text;
            if (test_in.empty()) {
                text = read_all(in);
            } else {
                std::ifstream file(test_in);
                if (!file) throw std::runtime_error("cannot open " + test_in);
                text = read_all(file);
            }
            Graph g;
            try {
                g = parse_graph_text(text);
            } catch (const std::exception& e) {
                err << "parse error: " << e.what() << "\n";
                return kExitUsage;
            }
            if (p == Property::nearplanar) {
                const auto w = is_near_planar(g);
                out << (w.verdict ? "true" : "false");
                if (w.removed_edge) out << " " << w.removed_edge->u << " " << w.removed_edge->v;
                out << "\n";
            } else {
                out << (holds(p, g) ? "true" : "false") << "\n";
            }
        } else if (*sweep) {
            const auto plan = sweep_flags.resolve({});
            const auto dir = resolve_out_dir(sweep_out);
            sweep_to_dir(plan, sweep_workers, dir, sweep_resume, command, err, false);
            for (auto p : plan.properties) out << surface_path(dir, p).string() << "\n";
        } else if (*oracle) {
            Decimal lo, hi, step;
            try {
                lo = Decimal::parse(oracle_dmin);
                hi = Decimal::parse(oracle_dmax);
                step = Decimal::parse(oracle_step);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (step.units() <= 0) throw UsageError("--step must be > 0");
            out << acyclic_oracle_csv(oracle_n, lo, hi, step);
        } else if (*contour_cmd) {
            const auto curve = contour(read_surface(contour_in), contour_height);
            if (contour_out.empty()) {
                out << "n,density\n";
                for (const auto& pt : curve.points) out << pt.n << "," << full_precision(pt.density) << "\n";
            } else {
                write_curve(contour_out, curve);
            }
        } else if (*fit_cmd) {
            FitOptions options;
            options.min_n = fit_min_n;
            const auto json = fit_to_json(fit_transition(read_curve(fit_in), fit_init, options));
            if (fit_out.empty())
                out << json;
            else
                write_text(fit_out, json);
        } else if (*model) {
            double value = 0;
            if (model_kind == "zeta")
                value = zeta(model_n, model_d, zp);
            else if (model_kind == "psi")
                value = psi(model_n, model_p, zp);
            else
                value = transition_width_ratio(model_n, model_pmin, model_pmax, zp);
            out << full_precision(value) << "\n";
        } else if (*validate) {
            FrequencySurface surface;
            if (!validate_in.empty()) {
                surface = read_surface(validate_in);
            } else {
                SweepOptions options;
                options.workers = validate_workers;
                surface = run_sweep(validate_flags.resolve({Property::acyclic}), options).front();
            }
            out << validation_to_json(validate_acyclic(surface));
        } else if (*repro) {
            run_repro(resolve_out_dir(repro_out), repro_samples, repro_n_max, repro_seed, repro_workers, command, out, err);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    return run(args, in, out, err);
}

}  // namespace tippinglab
