#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tippinglab/experiment.hpp"

namespace tippinglab {

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

/// Reproducibility record written as manifest.json next to sweep outputs.
struct RunManifest {
    std::string tool_version;
    std::vector<std::string> command;
    ExperimentPlan plan;
    unsigned workers = 1;
    std::string started_utc;
    std::string finished_utc;
    /// File name (relative to the output directory) -> SHA-256.
    std::map<std::string, std::string> outputs;
};

std::string utc_timestamp();

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& dir);

/// True when every listed output exists and hashes to its recorded digest.
bool verify_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace tippinglab
