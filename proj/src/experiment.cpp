#include "tippinglab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tippinglab/random.hpp"
#include "tippinglab/surface_io.hpp"

namespace tippinglab {

std::vector<Decimal> ExperimentPlan::densities() const {
    std::vector<Decimal> out;
    if (density_step.units() <= 0) return out;
    for (auto d = density_min; d <= density_max; d = d + density_step) out.push_back(d);
    return out;
}

std::string ExperimentPlan::stream_tag() const {
    std::string tag;
    for (auto p : properties) {
        if (!tag.empty()) tag += '+';
        tag += to_string(p);
    }
    return tag;
}

void ExperimentPlan::validate() const {
    if (properties.empty()) throw std::invalid_argument("plan lists no property");
    for (std::size_t i = 0; i < properties.size(); ++i)
        for (std::size_t j = i + 1; j < properties.size(); ++j)
            if (properties[i] == properties[j]) throw std::invalid_argument("plan lists a property twice");
    if (n_values.empty()) throw std::invalid_argument("plan has no vertex counts");
    if (n_values.front() < 1) throw std::invalid_argument("vertex counts must be >= 1");
    if (!std::is_sorted(n_values.begin(), n_values.end()) ||
        std::adjacent_find(n_values.begin(), n_values.end()) != n_values.end())
        throw std::invalid_argument("vertex counts must be strictly increasing");
    if (density_step.units() <= 0) throw std::invalid_argument("density step must be > 0");
    if (density_min > density_max) throw std::invalid_argument("density_min exceeds density_max");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
}

std::vector<Vertex> n_range(Vertex lo, Vertex hi, Vertex step) {
    if (step < 1) throw std::invalid_argument("n step must be >= 1");
    std::vector<Vertex> out;
    for (Vertex n = lo; n <= hi; n += step) out.push_back(n);
    return out;
}

ExperimentPlan default_plan(Property p) {
    ExperimentPlan plan;
    plan.properties = {p};
    plan.n_values = n_range(1, p == Property::nearplanar ? 200 : 400);
    plan.density_min = Decimal::parse("0.0");
    plan.samples = kPaperSamples;
    switch (p) {
        case Property::acyclic:
            plan.density_max = Decimal::parse("1.0");
            plan.density_step = Decimal::parse("0.05");
            break;
        case Property::planar:
        case Property::nearplanar:
            plan.density_max = Decimal::parse("3.0");
            plan.density_step = Decimal::parse("0.1");
            break;
        case Property::outerplanar:
            plan.density_max = Decimal::parse("2.0");
            plan.density_step = Decimal::parse("0.1");
            break;
    }
    return plan;
}

std::vector<SurfaceRow> FrequencySurface::skipped() const {
    std::vector<SurfaceRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const SurfaceRow& r) { return r.skipped(); });
    return out;
}

const SurfaceRow* FrequencySurface::find(Vertex n, Decimal density) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), std::make_pair(n, density),
                               [](const SurfaceRow& r, const std::pair<Vertex, Decimal>& key) {
                                   return std::tie(r.n, r.density) < std::tie(key.first, key.second);
                               });
    if (it == rows.end() || it->n != n || it->density != density) return nullptr;
    return &*it;
}

std::filesystem::path surface_path(const std::filesystem::path& dir, Property p) {
    return dir / ("surface_" + std::string(to_string(p)) + ".csv");
}

Graph sample_graph(const ExperimentPlan& plan, Vertex n, std::int64_t m, std::uint64_t replicate) {
    RngState rng(derive_cell_seed(plan.seed, n, m, plan.stream_tag(), replicate));
    return random_simple_graph(n, m, rng);
}

namespace {

struct Cell {
    Vertex n;
    Decimal density;
};

/// One row per property for a single cell.
std::vector<SurfaceRow> measure_cell(const ExperimentPlan& plan, const std::string& tag, const Cell& cell) {
    const auto count = edge_count(cell.n, cell.density);
    std::vector<SurfaceRow> rows(plan.properties.size(), SurfaceRow{cell.n, cell.density, count.m, 0, 0});
    if (!count.feasible) return rows;
    for (std::int64_t j = 0; j < plan.samples; ++j) {
        RngState rng(derive_cell_seed(plan.seed, cell.n, count.m, tag, static_cast<std::uint64_t>(j)));
        const auto g = random_simple_graph(cell.n, count.m, rng);
        for (std::size_t p = 0; p < plan.properties.size(); ++p)
            if (holds(plan.properties[p], g)) ++rows[p].positives;
    }
    for (auto& r : rows) r.samples = plan.samples;
    return rows;
}

/// Number of leading cells already present, identically, in every file.
std::size_t resumable_prefix(const ExperimentPlan& plan, const std::vector<Cell>& cells,
                             const std::filesystem::path& dir, std::vector<FrequencySurface>& surfaces) {
    std::size_t prefix = cells.size();
    for (std::size_t p = 0; p < plan.properties.size(); ++p) {
        const auto path = surface_path(dir, plan.properties[p]);
        if (!std::filesystem::exists(path)) return 0;
        auto existing = read_surface(path, ReadMode::tolerate_truncation);
        if (!(existing.plan == plan))
            throw std::runtime_error("cannot resume: " + path.string() + " was produced by a different plan");
        std::size_t matched = 0;
        while (matched < existing.rows.size() && matched < cells.size()) {
            const auto& row = existing.rows[matched];
            const auto& cell = cells[matched];
            const auto count = edge_count(cell.n, cell.density);
            if (row.n != cell.n || row.density != cell.density || row.m != count.m ||
                row.samples != (count.feasible ? plan.samples : 0))
                break;
            ++matched;
        }
        prefix = std::min(prefix, matched);
        surfaces[p].rows = std::move(existing.rows);
    }
    for (auto& s : surfaces) s.rows.resize(prefix);
    return prefix;
}

}  // namespace

std::vector<FrequencySurface> run_sweep(const ExperimentPlan& plan, const SweepOptions& options) {
    plan.validate();
    const auto tag = plan.stream_tag();

    std::vector<Cell> cells;
    for (auto n : plan.n_values)
        for (auto d : plan.densities()) cells.push_back({n, d});

    std::vector<FrequencySurface> surfaces;
    for (auto p : plan.properties) surfaces.push_back({plan, p, {}});

    std::size_t committed = 0;
    std::vector<std::unique_ptr<SurfaceWriter>> writers;
    if (options.out_dir) {
        std::filesystem::create_directories(*options.out_dir);
        if (options.resume) committed = resumable_prefix(plan, cells, *options.out_dir, surfaces);
        for (auto& s : surfaces) writers.push_back(std::make_unique<SurfaceWriter>(surface_path(*options.out_dir, s.property), s));
    }

    std::size_t limit = cells.size();
    if (options.stop_after_cells) limit = std::min(limit, *options.stop_after_cells);
    if (committed >= limit) return surfaces;

    // Workers claim cells from a shared counter; the calling thread commits
    // finished cells strictly in grid order.
    std::vector<std::optional<std::vector<SurfaceRow>>> results(cells.size());
    std::atomic<std::size_t> next{committed};
    std::atomic<bool> stop{false};
    std::mutex mutex;
    std::condition_variable ready;
    std::exception_ptr failure;

    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < limit && !stop; i = next++) {
                auto rows = measure_cell(plan, tag, cells[i]);
                std::lock_guard lock(mutex);
                results[i] = std::move(rows);
                ready.notify_all();
            }
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            stop = true;
            ready.notify_all();
        }
    };

    const unsigned workers = std::max(1u, options.workers);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);

    try {
        while (committed < limit) {
            std::vector<SurfaceRow> rows;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return results[committed].has_value() || failure; });
                if (failure) break;
                rows = std::move(*results[committed]);
                results[committed].reset();
            }
            for (std::size_t p = 0; p < rows.size(); ++p) {
                surfaces[p].rows.push_back(rows[p]);
                if (!writers.empty()) writers[p]->append(rows[p]);
            }
            ++committed;
            if (options.progress) options.progress(committed, cells.size());
        }
    } catch (...) {
        stop = true;
        throw;
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return surfaces;
}

}  // namespace tippinglab
