#include "tippinglab/manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

#include "tippinglab/surface_io.hpp"

namespace tippinglab {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("SHA-256 initialisation failed");
    }
    void update(const void* data, std::size_t size) {
        if (EVP_DigestUpdate(ctx_.get(), data, size) != 1) throw std::runtime_error("SHA-256 update failed");
    }
    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int length = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), digest.data(), &length) != 1) throw std::runtime_error("SHA-256 final failed");
        static constexpr char kHex[] = "0123456789abcdef";
        std::string out;
        for (unsigned i = 0; i < length; ++i) {
            out += kHex[digest[i] >> 4];
            out += kHex[digest[i] & 15];
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    Sha256 h;
    h.update(bytes.data(), bytes.size());
    return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Sha256 h;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["tool"] = "tippinglab";
    j["tool_version"] = manifest.tool_version;
    j["command"] = manifest.command;
    j["plan"] = nlohmann::ordered_json::parse(plan_to_json(manifest.plan));
    j["seed"] = manifest.plan.seed;
    j["workers"] = manifest.workers;
    j["started_utc"] = manifest.started_utc;
    j["finished_utc"] = manifest.finished_utc;
    j["outputs"] = nlohmann::ordered_json::object();
    for (const auto& [name, digest] : manifest.outputs) j["outputs"][name] = {{"sha256", digest}};
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw std::runtime_error("no manifest.json in " + dir.string());
    const auto j = nlohmann::json::parse(in);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::vector<std::string>>();
    m.plan = plan_from_json(j.at("plan").dump());
    m.workers = j.at("workers").get<unsigned>();
    m.started_utc = j.at("started_utc").get<std::string>();
    m.finished_utc = j.at("finished_utc").get<std::string>();
    for (const auto& [name, entry] : j.at("outputs").items()) m.outputs[name] = entry.at("sha256").get<std::string>();
    return m;
}

bool verify_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
    for (const auto& [name, digest] : manifest.outputs) {
        const auto path = dir / name;
        if (!std::filesystem::exists(path) || sha256_file(path) != digest) return false;
    }
    return true;
}

}  // namespace tippinglab
