#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tippinglab/decimal.hpp"
#include "tippinglab/graph.hpp"
#include "tippinglab/recognizers.hpp"

namespace tippinglab {

inline constexpr std::int64_t kDeskSamples = 1'000;
inline constexpr std::int64_t kPaperSamples = 10'000;

/// An (n, density) grid, the properties measured on it, and how many graphs
/// are drawn per cell.
struct ExperimentPlan {
    /// Measured on the same graphs when more than one is listed.
    std::vector<Property> properties;
    /// Strictly increasing.
    std::vector<Vertex> n_values;
    Decimal density_min;
    Decimal density_max;
    Decimal density_step;
    std::int64_t samples = kDeskSamples;
    std::uint64_t seed = 1;

    /// density_min, density_min + step, ... up to and including density_max.
    std::vector<Decimal> densities() const;

    /// Tag mixed into every sample seed: the property name for a single
    /// property, the names joined by '+' otherwise.
    std::string stream_tag() const;

    /// Throws std::invalid_argument when the plan is unusable.
    void validate() const;

    friend bool operator==(const ExperimentPlan&, const ExperimentPlan&) = default;
};

std::vector<Vertex> n_range(Vertex lo, Vertex hi, Vertex step = 1);

/// The grid the property was originally surveyed on, at 10,000 samples.
ExperimentPlan default_plan(Property p);

struct SurfaceRow {
    Vertex n = 0;
    Decimal density;
    std::int64_t m = 0;
    std::int64_t samples = 0;  // 0 marks a skipped (infeasible) cell
    std::int64_t positives = 0;

    bool skipped() const { return samples == 0; }
    double frequency() const { return static_cast<double>(positives) / static_cast<double>(samples); }

    friend bool operator==(const SurfaceRow&, const SurfaceRow&) = default;
};

/// Measured frequency of one property over a plan's grid, rows ordered by
/// (n, density).
struct FrequencySurface {
    ExperimentPlan plan;
    Property property = Property::planar;
    std::vector<SurfaceRow> rows;

    std::vector<SurfaceRow> skipped() const;
    const SurfaceRow* find(Vertex n, Decimal density) const;

    friend bool operator==(const FrequencySurface&, const FrequencySurface&) = default;
};

struct SweepOptions {
    unsigned workers = 1;
    /// When set, one surface CSV per property is written here as cells complete.
    std::optional<std::filesystem::path> out_dir;
    /// Continue from surface files already in out_dir.
    bool resume = false;
    /// Stop after this many cells are committed (simulates an interrupted run).
    std::optional<std::size_t> stop_after_cells;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Draws plan.samples graphs per feasible cell and counts, per property, how
/// many satisfy it. Output is identical for every worker count.
std::vector<FrequencySurface> run_sweep(const ExperimentPlan& plan, const SweepOptions& options = {});

/// Graph for sample `replicate` of cell (n, m).
Graph sample_graph(const ExperimentPlan& plan, Vertex n, std::int64_t m, std::uint64_t replicate);

std::filesystem::path surface_path(const std::filesystem::path& dir, Property p);

}  // namespace tippinglab
