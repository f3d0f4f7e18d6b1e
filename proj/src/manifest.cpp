#include "mcplaque/manifest.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mcplaque/config.hpp"

namespace mcplaque {

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string render_manifest(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["config_hash"] = hash_hex(m.config_hash);
    j["seed"] = m.seed;
    j["outputs"] = m.outputs;
    j["wall_clock_s"] = m.wall_clock_s;
    j["config_text"] = serialize_config(m.config);
    if (const auto* p = std::get_if<PulsatileFlow>(&m.config.flow)) {
        auto& samples = j["waveform_samples"] = nlohmann::ordered_json::array();
        for (const auto& s : p->waveform.samples)
            samples.push_back({s.t, s.q_ml_s});
        j["waveform_period"] = p->waveform.period;
    }
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
    const std::string text = render_manifest(m);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_manifest: cannot open " + path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.flush();
    if (!f) throw std::runtime_error("write_manifest: write failed for " + path);
}

}  // namespace mcplaque
