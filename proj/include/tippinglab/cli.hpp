#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tippinglab/experiment.hpp"

namespace tippinglab {

/// Measured acyclicity frequencies against the exact forest probability.
struct AcyclicValidation {
    std::size_t cells = 0;
    double mean_abs_error = 0;
    double peak_abs_error = 0;
    double signed_mean_error = 0;  // mean of (frequency - probability)
    Vertex peak_n = 0;
    Decimal peak_density;
};

/// Compares every measured cell with acyclic_probability. Throws
/// std::invalid_argument for a surface of another property.
AcyclicValidation validate_acyclic(const FrequencySurface& surface);

std::string validation_to_json(const AcyclicValidation& v);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args exclude the program name). Output that a
/// command prints goes to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tippinglab
