#pragma once

#include <map>
#include <string>

#include "mcplaque/transport.hpp"

namespace mcplaque {

// Sectioned key-value text, parsed but not yet interpreted.  Keeping this
// stage separate lets command-line overrides replace raw values before
// defaults (notably the dt rule) are resolved.
struct RawConfig {
    struct Entry {
        std::string value;
        int line = 0;  // 0 for programmatic overrides
    };
    struct Section {
        int line = 0;
        std::map<std::string, Entry> keys;
    };
    std::map<std::string, Section> sections;
};

// Parse the sectioned key-value syntax: '#' comments, [section] headers,
// 'key = value' lines.  Rejects malformed lines, keys before any section,
// duplicate keys, and duplicate sections, all with line numbers.
RawConfig parse_raw_config(const std::string& text);

// Insert or replace one raw value (used for command-line overrides).
void set_raw_key(RawConfig& raw, const std::string& section,
                 const std::string& key, const std::string& value);

// Interpret a raw config: reject unknown sections/keys, apply defaults for
// omitted keys (straight 3 mm x 50 mm vessel, blood-like fluid, 1000
// particles, constant 0.342 m/s inlet; dt defaults to 1e-4 s, tightened to
// 1e-5 s when r_p/r_c >= 0.75), load and normalize the waveform for
// pulsatile mode, and validate the result.  Throws std::invalid_argument on
// semantic errors and std::runtime_error when a waveform file is unreadable.
SimulationConfig resolve_config(const RawConfig& raw);

// parse_raw_config + resolve_config.
SimulationConfig parse_config(const std::string& text);

// Canonical text form: fixed section and key order, every resolved value
// spelled out with 17 significant digits so parsing it back reproduces the
// config exactly (waveform files are referenced by their recorded path).
std::string serialize_config(const SimulationConfig& cfg);

// Whole-file read helper; throws std::runtime_error on failure.
std::string read_text_file(const std::string& path);

}  // namespace mcplaque
