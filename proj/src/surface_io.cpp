#include "tippinglab/surface_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "tippinglab/random.hpp"

namespace tippinglab {

namespace {

constexpr const char* kPlanPrefix = "# plan ";

std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_int(const std::string& field, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw SurfaceFormatError(line, std::string("bad ") + what + " '" + field + "'");
    return value;
}

}  // namespace

std::string plan_to_json(const ExperimentPlan& plan) {
    nlohmann::ordered_json j;
    j["properties"] = nlohmann::json::array();
    for (auto p : plan.properties) j["properties"].push_back(std::string(to_string(p)));
    j["n_values"] = plan.n_values;
    j["density_min"] = plan.density_min.to_string();
    j["density_max"] = plan.density_max.to_string();
    j["density_step"] = plan.density_step.to_string();
    j["samples"] = plan.samples;
    j["seed"] = plan.seed;
    return j.dump();
}

ExperimentPlan plan_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentPlan plan;
    for (const auto& p : j.at("properties")) plan.properties.push_back(parse_property(p.get<std::string>()));
    plan.n_values = j.at("n_values").get<std::vector<Vertex>>();
    plan.density_min = Decimal::parse(j.at("density_min").get<std::string>());
    plan.density_max = Decimal::parse(j.at("density_max").get<std::string>());
    plan.density_step = Decimal::parse(j.at("density_step").get<std::string>());
    plan.samples = j.at("samples").get<std::int64_t>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    return plan;
}

std::string format_surface_header(const FrequencySurface& s) {
    return std::string(kSurfaceHeader) + "\n" + kPlanPrefix + plan_to_json(s.plan) + "\n";
}

std::string format_surface_row(Property p, const SurfaceRow& row) {
    std::string out = std::to_string(kSurfaceSchemaVersion);
    out += ',';
    out += to_string(p);
    out += ',' + std::to_string(row.n);
    out += ',' + row.density.to_string();
    out += ',' + std::to_string(row.m);
    out += ',' + std::to_string(row.samples);
    out += ',' + std::to_string(row.positives);
    out += ',';
    if (!row.skipped()) out += shortest(row.frequency());
    out += '\n';
    return out;
}

void write_surface(const std::filesystem::path& path, const FrequencySurface& s) {
    SurfaceWriter writer(path, s);
}

SurfaceWriter::SurfaceWriter(const std::filesystem::path& path, const FrequencySurface& existing)
    : out_(path, std::ios::binary | std::ios::trunc), property_(existing.property) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out_ << format_surface_header(existing);
    for (const auto& row : existing.rows) out_ << format_surface_row(property_, row);
    out_.flush();
    if (!out_) throw std::runtime_error("write failed on " + path.string());
}

void SurfaceWriter::append(const SurfaceRow& row) {
    out_ << format_surface_row(property_, row);
    out_.flush();
    if (!out_) throw std::runtime_error("write failed while appending a surface row");
}

FrequencySurface read_surface(const std::filesystem::path& path, ReadMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    if (mode == ReadMode::tolerate_truncation && !text.empty() && text.back() != '\n') {
        const auto cut = text.find_last_of('\n');
        text.erase(cut == std::string::npos ? 0 : cut + 1);
    }

    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start < text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string::npos) end = text.size();
            lines.push_back(text.substr(start, end - start));
            start = end + 1;
        }
    }
    if (lines.empty()) throw SurfaceFormatError(1, "empty surface file");
    if (lines[0] != kSurfaceHeader) {
        if (lines[0].rfind("schema=", 0) == 0)
            throw SchemaVersionError(1, "unsupported surface schema '" + lines[0].substr(0, lines[0].find(',')) +
                                            "', expected schema=" + std::to_string(kSurfaceSchemaVersion));
        throw SurfaceFormatError(1, "missing surface header");
    }
    if (lines.size() < 2 || lines[1].rfind(kPlanPrefix, 0) != 0) throw SurfaceFormatError(2, "missing plan line");

    FrequencySurface s;
    try {
        s.plan = plan_from_json(lines[1].substr(std::string(kPlanPrefix).size()));
    } catch (const std::exception& e) {
        throw SurfaceFormatError(2, std::string("bad plan: ") + e.what());
    }

    std::optional<Property> property;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto lineno = i + 1;
        const auto fields = split(lines[i], ',');
        if (fields.size() != 8) throw SurfaceFormatError(lineno, "expected 8 fields, got " + std::to_string(fields.size()));
        if (fields[0] != std::to_string(kSurfaceSchemaVersion))
            throw SchemaVersionError(lineno, "row schema version '" + fields[0] + "'");
        Property p;
        try {
            p = parse_property(fields[1]);
        } catch (const UnknownProperty& e) {
            throw SurfaceFormatError(lineno, e.what());
        }
        if (property && *property != p) throw SurfaceFormatError(lineno, "mixed properties in one surface");
        property = p;

        SurfaceRow row;
        row.n = parse_int<Vertex>(fields[2], lineno, "n");
        try {
            row.density = Decimal::parse(fields[3]);
        } catch (const std::invalid_argument& e) {
            throw SurfaceFormatError(lineno, e.what());
        }
        row.m = parse_int<std::int64_t>(fields[4], lineno, "m");
        row.samples = parse_int<std::int64_t>(fields[5], lineno, "samples");
        row.positives = parse_int<std::int64_t>(fields[6], lineno, "positives");
        if (row.n < 1 || row.m != round_half_up(row.n, row.density))
            throw SurfaceFormatError(lineno, "m does not match round(n * density)");
        if (row.samples < 0 || row.positives < 0 || row.positives > row.samples)
            throw SurfaceFormatError(lineno, "positives outside [0, samples]");
        const std::string expected = row.skipped() ? "" : shortest(row.frequency());
        if (fields[7] != expected) throw SurfaceFormatError(lineno, "frequency does not match positives/samples");
        if (!s.rows.empty()) {
            const auto& prev = s.rows.back();
            if (std::tie(prev.n, prev.density) >= std::tie(row.n, row.density))
                throw SurfaceFormatError(lineno, "rows out of (n, density) order or duplicated");
        }
        s.rows.push_back(row);
    }
    if (property) {
        s.property = *property;
    } else if (s.plan.properties.size() == 1) {
        s.property = s.plan.properties.front();
    } else {
        // An empty multi-property file: fall back to the file name.
        const auto stem = path.stem().string();
        const auto underscore = stem.find('_');
        s.property = parse_property(underscore == std::string::npos ? stem : stem.substr(underscore + 1));
    }
    return s;
}

}  // namespace tippinglab
