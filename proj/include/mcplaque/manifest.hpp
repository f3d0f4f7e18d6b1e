#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcplaque/transport.hpp"

namespace mcplaque {

inline constexpr const char* kToolName = "mcplaque";
inline constexpr const char* kToolVersion = "0.1.0";

// Record of one simulate run: everything needed to reproduce its outputs
// byte for byte.  The canonical config text is embedded, and for pulsatile
// runs so are the (normalized) waveform samples, so reproduction does not
// depend on the original waveform file still existing.
struct RunManifest {
    SimulationConfig config;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;  // paths relative to the manifest
    double wall_clock_s = 0.0;
};

// 16 lower-case hex digits.
std::string hash_hex(std::uint64_t h);

// JSON text (stable key order, trailing newline).
std::string render_manifest(const RunManifest& m);

// render_manifest to a file; throws std::runtime_error on I/O failure.
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace mcplaque
