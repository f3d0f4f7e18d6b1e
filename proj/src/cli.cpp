#include "mcplaque/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcplaque/channel_analytics.hpp"
#include "mcplaque/config.hpp"
#include "mcplaque/csv.hpp"
#include "mcplaque/manifest.hpp"
#include "mcplaque/pulsatile.hpp"
#include "mcplaque/rheology.hpp"
#include "mcplaque/transport.hpp"

namespace mcplaque {

namespace {

void emit_table(const CsvTable& table, const std::string& out_path) {
    if (out_path.empty()) {
        const std::string text = render_csv(table);
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_csv(table, out_path);
        std::printf("wrote %s (%zu rows)\n", out_path.c_str(),
                    table.rows.size());
    }
}

// Radial velocity profiles of the three blood models across the diameter.
CsvTable profile_table(int samples, double u_avg) {
    const double r_c = VesselGeometry{}.r_c;
    const FlowConditions flow{u_avg};
    const std::vector<FluidModel> models = {FluidModel::newtonian(),
                                            FluidModel::power_law(),
                                            FluidModel::herschel_bulkley()};
    CsvTable t;
    t.header = {"rho_m", "u_newtonian_m_s", "u_power_law_m_s",
                "u_herschel_bulkley_m_s"};
    for (int i = 0; i < samples; ++i) {
        const double rho = -r_c + 2.0 * r_c * i / (samples - 1);
        std::vector<double> row = {rho};
        for (const auto& f : models)
            row.push_back(
                axial_velocity(f, centerline_speed(f, flow), r_c, std::abs(rho)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Analytical impulse responses of the three models in a straight channel.
CsvTable cir_table(int samples, double t_end, double u_avg) {
    const double l_c = VesselGeometry{}.l_c;
    const FlowConditions flow{u_avg};
    CsvTable t;
    t.header = {"t_s", "h_newtonian", "h_power_law", "h_herschel_bulkley"};
    for (int i = 0; i < samples; ++i) {
        const double time = t_end * i / (samples - 1);
        std::vector<double> row = {time};
        for (const auto& f : {FluidModel::newtonian(), FluidModel::power_law(),
                              FluidModel::herschel_bulkley()})
            row.push_back(AnalyticalCIR{f, centerline_speed(f, flow), l_c}(time));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable venturi_table(const std::vector<double>& l_c_values, int samples) {
    CsvTable t;
    t.header = {"l_c_m", "r_p_rel", "time_reduction", "speed_increase"};
    for (const auto& row :
         venturi_reduction_curve(VesselGeometry{}, l_c_values, samples))
        t.rows.push_back(
            {row.l_c, row.r_p_rel, row.time_reduction, row.speed_increase});
    return t;
}

CsvTable waveform_table(const PulsatileWaveform& w, int samples) {
    CsvTable t;
    t.header = {"time_s", "flow_rate_ml_per_s"};
    for (int i = 0; i < samples; ++i) {
        const double time = w.period * i / (samples - 1);
        t.rows.push_back({time, flow_rate_at(w, time)});
    }
    return t;
}

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SimulateArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string release;
    std::uint64_t seed = 0;
    double rp_rel = 0.0;
    std::uint64_t particles = 0;
    bool has_seed = false, has_release = false, has_rp_rel = false,
         has_particles = false;
};

int do_simulate(const SimulateArgs& args) {
    std::string text;
    if (!args.config_path.empty()) {
        try {
            text = read_text_file(args.config_path);
        } catch (const std::runtime_error& e) {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
    }
    RawConfig raw = parse_raw_config(text);
    if (args.has_seed)
        set_raw_key(raw, "sim", "seed", std::to_string(args.seed));
    if (args.has_particles)
        set_raw_key(raw, "particles", "count", std::to_string(args.particles));
    if (args.has_rp_rel) {
        raw.sections["channel"].keys.erase("r_p");  // the override wins
        set_raw_key(raw, "channel", "r_p_rel", f17(args.rp_rel));
    }
    if (args.has_release) {
        // a release phase only makes sense for pulsatile flow; selecting one
        // on a config without an explicit mode implies it
        if (!raw.sections.count("flow") ||
            !raw.sections.at("flow").keys.count("mode"))
            set_raw_key(raw, "flow", "mode", "pulsatile");
        set_raw_key(raw, "flow", "release", args.release);
    }
    const SimulationConfig cfg = resolve_config(raw);

    const auto t_start = std::chrono::steady_clock::now();
    const EmpiricalCIR cir = run(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();

    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);
    CsvTable table;
    table.header = {"t_release_s", "n_received"};
    table.rows.reserve(cir.grid.size());
    for (std::size_t k = 0; k < cir.grid.size(); ++k)
        table.rows.push_back({cir.grid[k], static_cast<double>(cir.received[k])});
    const std::string csv_path = (fs::path(args.out_dir) / "cir.csv").string();
    write_csv(table, csv_path);

    RunManifest manifest;
    manifest.config = cfg;
    manifest.config_hash = cir.config_hash;
    manifest.seed = cfg.seed;
    manifest.outputs = {"cir.csv"};
    manifest.wall_clock_s = wall;
    const std::string manifest_path =
        (fs::path(args.out_dir) / "manifest.json").string();
    write_manifest(manifest, manifest_path);

    const std::uint32_t received =
        cir.received.empty() ? 0 : cir.received.back();
    std::printf("wrote %s (%u/%u received, %zu grid points, %.2f s)\n",
                csv_path.c_str(), received, cir.released, cir.grid.size(), wall);
    std::printf("wrote %s (config %s)\n", manifest_path.c_str(),
                hash_hex(cir.config_hash).c_str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Channel modeling for molecular communication in a "
                 "plaque-obstructed blood vessel"};
    app.require_subcommand(1);

    // profile
    auto* profile = app.add_subcommand(
        "profile", "Radial velocity profiles of the three blood models");
    int profile_samples = 201;
    double profile_u_avg = 0.342;
    std::string profile_out;
    profile->add_option("--samples", profile_samples, "Radial sample count")
        ->check(CLI::Range(2, 1000000));
    profile->add_option("--u-avg", profile_u_avg, "Bulk velocity [m/s]")
        ->check(CLI::PositiveNumber);
    profile->add_option("--out", profile_out, "Output CSV path (default stdout)");

    // cir analytic
    auto* cir = app.add_subcommand("cir", "Channel impulse response tables");
    cir->require_subcommand(1);
    auto* cir_analytic = cir->add_subcommand(
        "analytic", "Closed-form impulse responses, straight channel");
    int cir_samples = 1001;
    double cir_t_end = 1.0;
    double cir_u_avg = 0.342;
    std::string cir_out;
    cir_analytic->add_option("--samples", cir_samples, "Time sample count")
        ->check(CLI::Range(2, 10000000));
    cir_analytic->add_option("--t-end", cir_t_end, "Last sampled time [s]")
        ->check(CLI::PositiveNumber);
    cir_analytic->add_option("--u-avg", cir_u_avg, "Bulk velocity [m/s]")
        ->check(CLI::PositiveNumber);
    cir_analytic->add_option("--out", cir_out, "Output CSV path (default stdout)");

    // venturi
    auto* venturi = app.add_subcommand(
        "venturi", "Traversal-time reduction vs. obstruction severity");
    std::vector<double> venturi_lc = {25.0e-3, 50.0e-3, 75.0e-3, 100.0e-3};
    int venturi_samples = 20;
    std::string venturi_out;
    venturi->add_option("--lc", venturi_lc, "Channel lengths [m]")
        ->check(CLI::PositiveNumber);
    venturi
        ->add_option("--samples", venturi_samples,
                     "Obstruction samples over [0, 1)")
        ->check(CLI::Range(2, 1000000));
    venturi->add_option("--out", venturi_out, "Output CSV path (default stdout)");

    // waveform
    auto* waveform = app.add_subcommand(
        "waveform", "Sample the active inlet flow-rate waveform");
    std::string waveform_file;
    double waveform_period = 0.9;
    int waveform_samples = 91;
    std::string waveform_out;
    auto* wf_file_opt = waveform->add_option(
        "--file", waveform_file, "Waveform table (default: built-in carotid)");
    waveform->add_option("--period", waveform_period, "Cycle period [s]")
        ->check(CLI::PositiveNumber)
        ->needs(wf_file_opt);
    waveform->add_option("--samples", waveform_samples, "Time sample count")
        ->check(CLI::Range(2, 1000000));
    waveform->add_option("--out", waveform_out, "Output CSV path (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo particle transport run (CSV + manifest)");
    SimulateArgs sim;
    simulate->add_option("--config", sim.config_path, "Config file path");
    auto* seed_opt = simulate->add_option("--seed", sim.seed, "RNG seed");
    auto* release_opt = simulate->add_option(
        "--release", sim.release,
        "Release phase: ps, ed, ld, or t=<seconds> (implies pulsatile mode)");
    auto* rp_opt = simulate->add_option("--rp-rel", sim.rp_rel,
                                        "Obstruction depth r_p / r_c");
    auto* particles_opt =
        simulate->add_option("--particles", sim.particles, "Particle count");
    simulate->add_option("--out", sim.out_dir, "Output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*profile) {
            emit_table(profile_table(profile_samples, profile_u_avg),
                       profile_out);
        } else if (*cir) {
            emit_table(cir_table(cir_samples, cir_t_end, cir_u_avg), cir_out);
        } else if (*venturi) {
            emit_table(venturi_table(venturi_lc, venturi_samples), venturi_out);
        } else if (*waveform) {
            PulsatileWaveform w = default_waveform();
            if (!waveform_file.empty())
                w = parse_waveform_table(read_text_file(waveform_file),
                                         waveform_period);
            emit_table(waveform_table(w, waveform_samples), waveform_out);
        } else if (*simulate) {
            sim.has_seed = seed_opt->count() > 0;
            sim.has_release = release_opt->count() > 0;
            sim.has_rp_rel = rp_opt->count() > 0;
            sim.has_particles = particles_opt->count() > 0;
            return do_simulate(sim);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

}  // namespace mcplaque
