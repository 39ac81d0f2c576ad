#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "tippinglab/experiment.hpp"

namespace tippinglab {

inline constexpr int kSurfaceSchemaVersion = 1;
inline constexpr const char* kSurfaceHeader = "schema=1,property,n,density,m,samples,positives,frequency";

/// Malformed surface file; the message carries the offending line number.
class SurfaceFormatError : public std::runtime_error {
public:
    SurfaceFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class SchemaVersionError : public SurfaceFormatError {
public:
    using SurfaceFormatError::SurfaceFormatError;
};

/// Layout:
///
///   schema=1,property,n,density,m,samples,positives,frequency
///   # plan {...json...}
///   1,planar,200,0.6,120,5000,4990,0.998
///   1,planar,5,2.5,13,0,0,
///
/// Every row repeats the schema version in its first column. Skipped cells
/// carry samples=0 and an empty frequency.
std::string format_surface_header(const FrequencySurface& s);
std::string format_surface_row(Property p, const SurfaceRow& row);

std::string plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const std::string& text);

void write_surface(const std::filesystem::path& path, const FrequencySurface& s);

enum class ReadMode {
    strict,
    /// Drops a final line that lacks its newline (an interrupted write).
    tolerate_truncation,
};

FrequencySurface read_surface(const std::filesystem::path& path, ReadMode mode = ReadMode::strict);

/// Appends rows to a surface file and flushes each one.
class SurfaceWriter {
public:
    /// Truncates `path` and writes the header plus `existing` rows.
    SurfaceWriter(const std::filesystem::path& path, const FrequencySurface& existing);
    void append(const SurfaceRow& row);

private:
    std::ofstream out_;
    Property property_;
};

}  // namespace tippinglab
