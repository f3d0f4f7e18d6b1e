#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "mcplaque/cli.hpp"
#include "mcplaque/config.hpp"
#include "mcplaque/csv.hpp"
#include "mcplaque/manifest.hpp"
#include "mcplaque/transport.hpp"

using namespace mcplaque;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mcplaque-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static inline int counter = 0;
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
}

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv = {"mcplaque"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("csv values carry 9 significant digits") {
    CHECK(csv_value(0.15) == "0.15");
    CHECK(csv_value(250.0) == "250");
    CHECK(csv_value(0.123456789123) == "0.123456789");
    CHECK(csv_value(1.0e9) == "1e+09");
    CHECK(csv_value(-3.0e-3) == "-0.003");
}

TEST_CASE("csv rendering is exact and newline-terminated") {
    CsvTable t;
    t.header = {"a", "b"};
    SUBCASE("empty table renders the header only") {
        CHECK(render_csv(t) == "a,b\n");
    }
    SUBCASE("one row makes two lines") {
        t.rows.push_back({1.0, 2.5});
        CHECK(render_csv(t) == "a,b\n1,2.5\n");
    }
    SUBCASE("ragged rows are rejected") {
        t.rows.push_back({1.0});
        CHECK_THROWS_AS(render_csv(t), std::invalid_argument);
    }
    SUBCASE("writing twice produces byte-identical files") {
        t.rows.push_back({0.342, 9.67});
        TempDir tmp;
        const auto p1 = tmp.path / "one.csv";
        const auto p2 = tmp.path / "two.csv";
        write_csv(t, p1.string());
        write_csv(t, p2.string());
        CHECK(read_text_file(p1.string()) == read_text_file(p2.string()));
        CHECK(read_text_file(p1.string()) == render_csv(t));
    }
}

TEST_CASE("raw config parsing reports line numbers") {
    const auto raw = parse_raw_config(
        "# experiment 12\n"
        "[channel]\n"
        "r_p_rel = 0.5\n"
        "\n"
        "[sim]\n"
        "seed = 7  # inline comment\n");
    CHECK(raw.sections.at("channel").keys.at("r_p_rel").value == "0.5");
    CHECK(raw.sections.at("channel").keys.at("r_p_rel").line == 3);
    CHECK(raw.sections.at("sim").keys.at("seed").value == "7");

    auto expect_error = [](const char* text, const char* fragment) {
        try {
            parse_raw_config(text);
            FAIL_CHECK("expected a parse error for: " << text);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("r_c = 1\n", "before any [section]");
    expect_error("[channel\n", "unterminated");
    expect_error("[channel]\nr_c\n", "expected 'key = value'");
    expect_error("[channel]\nr_c =\n", "empty value");
    expect_error("[channel]\nr_c = 1\nr_c = 2\n", "duplicate key");
    expect_error("[sim]\n[sim]\n", "duplicate section");
    expect_error("[]\n", "empty section");
}

TEST_CASE("empty config text resolves to the full default run") {
    const SimulationConfig cfg = parse_config("");
    CHECK(cfg.geometry.r_c == 3.0e-3);
    CHECK(cfg.geometry.l_c == 50.0e-3);
    CHECK(cfg.geometry.r_p == 0.0);
    CHECK(cfg.geometry.l_p_outer == 20.0e-3);
    CHECK(cfg.geometry.l_p_inner == 10.0e-3);
    CHECK(cfg.geometry.x_center == 25.0e-3);
    CHECK(cfg.fluid.kind == FluidKind::newtonian);
    CHECK(cfg.fluid.density == 1050.0);
    CHECK(cfg.particle_count == 1000);
    CHECK(cfg.diffusion.r_particle == 50.0e-9);
    CHECK(std::get<ConstantFlow>(cfg.flow).u_avg == 0.342);
    CHECK(cfg.dt == 1.0e-4);
    CHECK(cfg.t_end == 1.0);
    CHECK(cfg.seed == 1);
}

TEST_CASE("relative obstruction scales off the healthy radius") {
    const auto cfg = parse_config("[channel]\nr_p_rel = 0.25\n");
    CHECK(cfg.geometry.r_p == 0.75e-3);
}

TEST_CASE("the time step tightens for severe obstructions") {
    CHECK(parse_config("[channel]\nr_p_rel = 0.75\n").dt == 1.0e-5);
    CHECK(parse_config("[channel]\nr_p_rel = 0.8\n").dt == 1.0e-5);
    CHECK(parse_config("[channel]\nr_p_rel = 0.7\n").dt == 1.0e-4);
    // an explicit dt always wins
    CHECK(parse_config("[channel]\nr_p_rel = 0.75\n[sim]\ndt = 2e-4\n").dt ==
          2.0e-4);
    // the absolute-depth spelling feeds the same rule
    CHECK(parse_config("[channel]\nr_p = 2.25e-3\n").dt == 1.0e-5);
}

TEST_CASE("semantic config errors carry locations and reasons") {
    auto expect_error = [](const std::string& text, const char* fragment) {
        try {
            parse_config(text);
            FAIL_CHECK("expected a config error, fragment: " << fragment);
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("[channel]\nbogus = 1\n", "unknown key 'bogus'");
    expect_error("[conduit]\nr_c = 1\n", "unknown section [conduit]");
    expect_error("[sim]\ndt = -1e-4\n", "dt must be positive");
    expect_error("[sim]\ndt = abc\n", "not a finite number");
    expect_error("[sim]\nseed = -3\n", "not a nonnegative integer");
    expect_error("[channel]\nr_p_rel = 1.0\n", "r_p_rel must lie in [0, 1)");
    expect_error("[channel]\nr_p = 1e-3\nr_p_rel = 0.1\n", "not both");
    expect_error("[fluid]\nmodel = casson\n", "unknown fluid model");
    expect_error("[flow]\nrelease = ps\n", "only valid when mode = pulsatile");
    expect_error("[flow]\nmode = pulsatile\nperiod = 0.9\n",
                 "period applies to waveform files only");
    expect_error("[flow]\nmode = pulsatile\nrelease = noon\n",
                 "release must be ps, ed, ld, or t=<seconds>");
    expect_error("[particles]\ncount = 0\n", "count must be in");
}

TEST_CASE("x_center follows an overridden channel length") {
    const auto cfg = parse_config("[channel]\nl_c = 0.1\n");
    CHECK(cfg.geometry.x_center == 0.05);
    const auto pinned =
        parse_config("[channel]\nl_c = 0.1\nx_center = 0.03\n");
    CHECK(pinned.geometry.x_center == 0.03);
}

TEST_CASE("fluid models resolve their own defaults") {
    const auto pl = parse_config("[fluid]\nmodel = power_law\n");
    CHECK(pl.fluid.kind == FluidKind::power_law);
    CHECK(pl.fluid.K == 17.0e-3);
    CHECK(pl.fluid.n == 0.708);

    const auto hb = parse_config("[fluid]\nmodel = herschel_bulkley\n");
    CHECK(hb.fluid.tau_y == 5.0e-3);
    CHECK(hb.fluid.zeta == 0.05);

    const auto custom =
        parse_config("[fluid]\nmodel = power_law\nK = 2e-2\nn = 0.6\n");
    CHECK(custom.fluid.K == 2.0e-2);
    CHECK(custom.fluid.n == 0.6);
}

TEST_CASE("pulsatile mode loads and normalizes the built-in waveform") {
    const auto cfg = parse_config("[flow]\nmode = pulsatile\n");
    const auto& p = std::get<PulsatileFlow>(cfg.flow);
    CHECK(p.release_time == 0.16);  // peak systole by default
    CHECK(p.waveform.samples.size() == 91);
    CHECK(p.u_avg == 0.342);
    CHECK(mean_velocity_at(p.waveform, 0.0, cfg.geometry.r_c) > 0.0);
    CHECK(cycle_mean_flow(p.waveform) * 1.0e-6 /
              (3.14159265358979312 * 9.0e-6) ==
          doctest::Approx(0.342).epsilon(1e-12));

    CHECK(std::get<PulsatileFlow>(
              parse_config("[flow]\nmode = pulsatile\nrelease = ed\n").flow)
              .release_time == 0.40);
    // late diastole is the cycle end, i.e. phase zero of the next cycle
    CHECK(std::get<PulsatileFlow>(
              parse_config("[flow]\nmode = pulsatile\nrelease = ld\n").flow)
              .release_time == 0.0);
    CHECK(std::get<PulsatileFlow>(
              parse_config("[flow]\nmode = pulsatile\nrelease = t=0.25\n").flow)
              .release_time == 0.25);
}

TEST_CASE("pulsatile mode reads waveform files") {
    TempDir tmp;
    const auto wf = tmp.path / "wave.csv";
    write_file(wf,
               "time_s,flow_rate_ml_per_s\n0,4\n0.2,12\n0.5,6\n0.8,4\n");
    const std::string text = "[flow]\nmode = pulsatile\nwaveform = " +
                             wf.string() + "\nperiod = 0.8\n";
    const auto cfg = parse_config(text);
    const auto& p = std::get<PulsatileFlow>(cfg.flow);
    CHECK(p.waveform.samples.size() == 4);
    CHECK(p.waveform.period == 0.8);
    CHECK(p.waveform_path == wf.string());
    CHECK(cycle_mean_flow(p.waveform) * 1.0e-6 /
              (3.14159265358979312 * 9.0e-6) ==
          doctest::Approx(0.342).epsilon(1e-12));

    SUBCASE("a missing file names the path") {
        try {
            parse_config("[flow]\nmode = pulsatile\nwaveform = /no/such.csv\n");
            FAIL("expected an error");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find("/no/such.csv") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("serialization round-trips every config exactly") {
    const char* cases[] = {
        "",
        "[channel]\nr_p_rel = 0.75\n",
        "[fluid]\nmodel = herschel_bulkley\nzeta = 0.1\n",
        "[flow]\nmode = pulsatile\nrelease = ed\n",
        "[flow]\nmode = pulsatile\nrelease = t=0.123\nu_avg = 0.25\n",
        "[particles]\ncount = 77\ndiffusion = 1e-13\n[sim]\nseed = 9\ndt = "
        "5e-5\nt_end = 0.5\n",
    };
    for (const char* text : cases) {
        CAPTURE(text);
        const SimulationConfig c1 = parse_config(text);
        const std::string s1 = serialize_config(c1);
        const SimulationConfig c2 = parse_config(s1);
        CHECK(c1.content_hash() == c2.content_hash());
        CHECK(serialize_config(c2) == s1);  // fixed point
    }
}

TEST_CASE("round-trip survives file-loaded waveforms") {
    TempDir tmp;
    const auto wf = tmp.path / "w.csv";
    write_file(wf, "0,4\n0.3,12\n0.9,4\n");
    const std::string text =
        "[flow]\nmode = pulsatile\nwaveform = " + wf.string() + "\n";
    const SimulationConfig c1 = parse_config(text);
    const SimulationConfig c2 = parse_config(serialize_config(c1));
    CHECK(c1.content_hash() == c2.content_hash());
    CHECK(serialize_config(c2) == serialize_config(c1));
}

TEST_CASE("the hash ignores key order but not values") {
    const auto a = parse_config("[sim]\nseed = 4\ndt = 2e-4\n");
    const auto b = parse_config("[sim]\ndt = 2e-4\nseed = 4\n");
    CHECK(a.content_hash() == b.content_hash());
    const auto c = parse_config("[sim]\ndt = 2e-4\nseed = 5\n");
    CHECK(a.content_hash() != c.content_hash());
}

TEST_CASE("raw overrides land before resolution") {
    RawConfig raw = parse_raw_config("[channel]\nr_p = 1e-3\n");
    raw.sections["channel"].keys.erase("r_p");
    set_raw_key(raw, "channel", "r_p_rel", "0.75");
    set_raw_key(raw, "sim", "seed", "123");
    const auto cfg = resolve_config(raw);
    CHECK(cfg.geometry.r_p == doctest::Approx(2.25e-3));
    CHECK(cfg.seed == 123);
    CHECK(cfg.dt == 1.0e-5);  // the override drove the dt rule
}

TEST_CASE("manifests embed everything needed to reproduce a run") {
    RunManifest m;
    m.config = parse_config("[flow]\nmode = pulsatile\n");
    m.config_hash = m.config.content_hash();
    m.seed = m.config.seed;
    m.outputs = {"cir.csv"};
    m.wall_clock_s = 1.25;
    const std::string text = render_manifest(m);

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("tool") == kToolName);
    CHECK(j.at("version") == kToolVersion);
    CHECK(j.at("config_hash") == hash_hex(m.config_hash));
    CHECK(j.at("outputs").at(0) == "cir.csv");
    CHECK(j.at("waveform_samples").size() == 91);
    CHECK(j.at("waveform_period") == 0.9);

    // the embedded text reproduces the config bit for bit
    const SimulationConfig back =
        parse_config(j.at("config_text").get<std::string>());
    CHECK(back.content_hash() == m.config_hash);
}

TEST_CASE("cli table commands write well-formed csv") {
    TempDir tmp;
    SUBCASE("venturi") {
        const auto out = tmp.path / "venturi.csv";
        CHECK(cli({"venturi", "--lc", "0.05", "--out", out.string().c_str()}) ==
              0);
        const std::string text = read_text_file(out.string());
        CHECK(text.rfind("l_c_m,r_p_rel,time_reduction,speed_increase\n", 0) ==
              0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 21);  // header+20
    }
    SUBCASE("profile") {
        const auto out = tmp.path / "profile.csv";
        CHECK(cli({"profile", "--samples", "11", "--out",
                   out.string().c_str()}) == 0);
        const std::string text = read_text_file(out.string());
        CHECK(text.rfind("rho_m,", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 12);
    }
    SUBCASE("cir analytic") {
        const auto out = tmp.path / "cir.csv";
        CHECK(cli({"cir", "analytic", "--samples", "101", "--out",
                   out.string().c_str()}) == 0);
        const std::string text = read_text_file(out.string());
        CHECK(text.rfind("t_s,h_newtonian,h_power_law,h_herschel_bulkley\n",
                         0) == 0);
    }
    SUBCASE("waveform") {
        const auto out = tmp.path / "wave.csv";
        CHECK(cli({"waveform", "--samples", "10", "--out",
                   out.string().c_str()}) == 0);
        const std::string text = read_text_file(out.string());
        CHECK(text.rfind("time_s,flow_rate_ml_per_s\n", 0) == 0);
    }
}

TEST_CASE("cli simulate writes csv plus manifest and honors overrides") {
    TempDir tmp;
    const auto config = tmp.path / "run.ini";
    write_file(config,
               "[particles]\ncount = 40\n[sim]\ndt = 1e-3\nt_end = 0.05\n");
    const auto out = tmp.path / "out";
    CHECK(cli({"simulate", "--config", config.string().c_str(), "--seed", "11",
               "--out", out.string().c_str()}) == 0);
    const std::string csv = read_text_file((out / "cir.csv").string());
    CHECK(csv.rfind("t_release_s,n_received\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);  // header + 50 steps

    const auto j =
        nlohmann::json::parse(read_text_file((out / "manifest.json").string()));
    CHECK(j.at("seed") == 11);
    const SimulationConfig cfg =
        parse_config(j.at("config_text").get<std::string>());
    CHECK(cfg.seed == 11);
    CHECK(cfg.particle_count == 40);

    SUBCASE("exit codes distinguish usage, config, and runtime errors") {
        CHECK(cli({"simulate", "--no-such-flag"}) == 1);
        const auto bad = tmp.path / "bad.ini";
        write_file(bad, "[sim]\ndt = -1\n");
        CHECK(cli({"simulate", "--config", bad.string().c_str(), "--out",
                   out.string().c_str()}) == 2);
        CHECK(cli({"simulate", "--config", "/no/such/file.ini"}) == 2);
        CHECK(cli({"nonsense-command"}) == 1);
    }
}
