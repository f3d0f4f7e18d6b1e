#include "mcplaque/transport.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "mcplaque/philox.hpp"

namespace mcplaque {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Flattened, validation-free view of the configuration for the inner loop.
struct StepContext {
    // geometry
    double l_c, r_c, x_center, half_outer, half_inner, ramp_len, r_p;
    // fluid profile
    FluidKind kind;
    double mp1;    // m + 1
    double zeta;
    double ratio;  // u0 / u_avg
    // stepping
    double sigma;  // sqrt(2 D dt)
    double dt;

    static StepContext make(const SimulationConfig& cfg) {
        const auto& g = cfg.geometry;
        StepContext ctx;
        ctx.l_c = g.l_c;
        ctx.r_c = g.r_c;
        ctx.x_center = g.x_center;
        ctx.half_outer = 0.5 * g.l_p_outer;
        ctx.half_inner = 0.5 * g.l_p_inner;
        ctx.ramp_len = g.ramp_length();
        ctx.r_p = g.r_p;
        ctx.kind = cfg.fluid.kind;
        ctx.mp1 = cfg.fluid.m() + 1.0;
        ctx.zeta = cfg.fluid.zeta;
        ctx.ratio = centerline_ratio(cfg.fluid);
        ctx.sigma = std::sqrt(2.0 * cfg.diffusion.diffusion_coefficient() * cfg.dt);
        ctx.dt = cfg.dt;
        return ctx;
    }

    double radius(double x) const {
        const double d = std::abs(x - x_center);
        if (d >= half_outer || r_p == 0.0) return r_c;
        if (d <= half_inner) return r_c - r_p;
        return r_c - r_p * (half_outer - d) / ramp_len;
    }

    double slope(double x) const {
        const double d = std::abs(x - x_center);
        if (d >= half_outer || d <= half_inner || r_p == 0.0) return 0.0;
        return x < x_center ? -r_p / ramp_len : r_p / ramp_len;
    }

    double axial(double u0, double r, double rho) const {
        switch (kind) {
            case FluidKind::newtonian: {
                const double xi = rho / r;
                return u0 * (1.0 - xi * xi);
            }
            case FluidKind::power_law: {
                const double xi = std::min(rho / r, 1.0);
                return u0 * (1.0 - std::pow(xi, mp1));
            }
            case FluidKind::herschel_bulkley: {
                const double rho_p = zeta * r;
                if (rho < rho_p) return u0;
                const double xi = std::min((rho - rho_p) / (r - rho_p), 1.0);
                return u0 * (1.0 - std::pow(xi, mp1));
            }
        }
        return 0.0;  // unreachable
    }
};

struct AdvanceResult {
    bool arrived;
    double frac;  // fraction of the step elapsed at the RX-plane crossing
};

// One Euler-Maruyama step of a single particle; draw indexes the particle's
// RNG stream.  Mutates the position in place unless the particle arrives.
inline AdvanceResult advance_particle(const StepContext& ctx, std::uint64_t seed,
                                      std::uint64_t stream, std::uint64_t draw,
                                      double u_avg_t, double& x, double& y,
                                      double& z) {
    const double r = ctx.radius(x);
    const double rho = std::hypot(y, z);
    // continuity through the narrowing: u0 scales with (r_c / r)^2
    const double contraction = (ctx.r_c / r) * (ctx.r_c / r);
    const double u0_local = ctx.ratio * u_avg_t * contraction;
    const double ux = ctx.axial(u0_local, r, rho);
    // streamtube-following radial drift along (y, z)/rho, magnitude
    // (rho/r) * ux * dr/dx; zero on the axis and in the straight regions
    const double sl = ctx.slope(x);
    const double uy = ux * sl * y / r;
    const double uz = ux * sl * z / r;

    const philox::NormalTriple g = philox::normal_triple(seed, stream, draw);
    double nx = x + ux * ctx.dt + ctx.sigma * g.n0;
    double ny = y + uy * ctx.dt + ctx.sigma * g.n1;
    double nz = z + uz * ctx.dt + ctx.sigma * g.n2;

    if (nx >= ctx.l_c) {  // crossed the RX plane during this step
        const double frac = (ctx.l_c - x) / (nx - x);
        x = nx;
        y = ny;
        z = nz;
        return {true, frac};
    }
    if (nx < 0.0) nx = -nx;  // specular reflection at the inlet plane

    const double r_new = ctx.radius(nx);
    double rho_new = std::hypot(ny, nz);
    if (rho_new > r_new) {
        // specular reflection in the radial coordinate, re-applied while the
        // particle is still outside; clamp to the wall if it never settles
        const double rho_orig = rho_new;
        for (int i = 0; i < 8 && rho_new > r_new; ++i) {
            rho_new = 2.0 * r_new - rho_new;
            if (rho_new < 0.0) rho_new = -rho_new;  // crossed the axis
        }
        if (rho_new > r_new) rho_new = r_new;
        const double scale = rho_new / rho_orig;
        ny *= scale;
        nz *= scale;
    }
    x = nx;
    y = ny;
    z = nz;
    return {false, 0.0};
}

unsigned clamp_workers(unsigned workers, std::size_t n) {
    if (workers < 1) workers = 1;
    return static_cast<unsigned>(
        std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
}

}  // namespace

double SimulationConfig::release_time() const {
    if (const auto* p = std::get_if<PulsatileFlow>(&flow)) return p->release_time;
    return 0.0;
}

double SimulationConfig::mean_inlet_velocity(double t) const {
    if (const auto* p = std::get_if<PulsatileFlow>(&flow))
        return mean_velocity_at(p->waveform, t, geometry.r_c);
    return std::get<ConstantFlow>(flow).u_avg;
}

std::vector<std::string> SimulationConfig::validate() const {
    std::vector<std::string> violations = geometry.validate();
    for (auto& v : fluid.validate()) violations.push_back(v);
    for (auto& v : diffusion.validate()) violations.push_back(v);
    if (particle_count < 1) violations.push_back("particle_count must be >= 1");
    if (!(dt > 0.0)) violations.push_back("dt must be positive");
    if (!(t_end >= dt)) violations.push_back("t_end must be at least dt");
    if (const auto* p = std::get_if<PulsatileFlow>(&flow)) {
        if (p->waveform.samples.size() < 2)
            violations.push_back("pulsatile flow requires a loaded waveform");
        else if (!(p->release_time >= 0.0 &&
                   p->release_time < p->waveform.period))
            violations.push_back("release_time must lie within [0, period)");
    } else {
        if (!(std::get<ConstantFlow>(flow).u_avg > 0.0))
            violations.push_back("u_avg must be positive");
    }
    return violations;
}

std::uint64_t SimulationConfig::content_hash() const {
    // FNV-1a over a canonical byte encoding of the resolved values
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ull;
        }
    };
    auto mix_f64 = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        mix(&bits, sizeof bits);
    };
    auto mix_u64 = [&](std::uint64_t v) { mix(&v, sizeof v); };

    mix("mcplaque-config-v1", 18);
    mix_f64(geometry.r_c);
    mix_f64(geometry.l_c);
    mix_f64(geometry.r_p);
    mix_f64(geometry.l_p_outer);
    mix_f64(geometry.l_p_inner);
    mix_f64(geometry.x_center);
    mix_u64(static_cast<std::uint64_t>(fluid.kind));
    mix_f64(fluid.K);
    mix_f64(fluid.n);
    mix_f64(fluid.tau_y);
    mix_f64(fluid.zeta);
    mix_f64(fluid.density);
    mix_f64(diffusion.k_boltzmann);
    mix_f64(diffusion.temperature);
    mix_f64(diffusion.eta);
    mix_f64(diffusion.r_particle);
    mix_u64(diffusion.override_D.has_value());
    if (diffusion.override_D) mix_f64(*diffusion.override_D);
    if (const auto* p = std::get_if<PulsatileFlow>(&flow)) {
        mix_u64(1);
        mix_f64(p->release_time);
        mix_f64(p->waveform.period);
        mix_u64(p->waveform.samples.size());
        for (const auto& s : p->waveform.samples) {
            mix_f64(s.t);
            mix_f64(s.q_ml_s);
        }
    } else {
        mix_u64(0);
        mix_f64(std::get<ConstantFlow>(flow).u_avg);
    }
    mix_u64(particle_count);
    mix_f64(dt);
    mix_f64(t_end);
    mix_u64(seed);
    return h;
}

std::size_t ParticleEnsemble::alive_count() const {
    std::size_t n = 0;
    for (auto a : alive) n += a != 0;
    return n;
}

std::size_t ParticleEnsemble::arrived_count() const {
    std::size_t n = 0;
    for (double t : arrival_time) n += !std::isnan(t);
    return n;
}

ParticleEnsemble release_ensemble(const SimulationConfig& cfg) {
    if (auto violations = cfg.validate(); !violations.empty())
        throw std::invalid_argument("release_ensemble: " + violations.front());
    const std::size_t n = cfg.particle_count;
    const double r_c = cfg.geometry.r_c;
    ParticleEnsemble e;
    e.x.assign(n, 0.0);
    e.y.resize(n);
    e.z.resize(n);
    e.alive.assign(n, 1);
    e.arrival_time.assign(n, kNaN);
    e.draw_index.assign(n, 1);  // draw 0 is consumed by the release below
    e.seed = cfg.seed;
    for (std::size_t i = 0; i < n; ++i) {
        const philox::UniformQuad u = philox::uniform_quad(cfg.seed, i, 0);
        const double rho = r_c * std::sqrt(u.u0);  // uniform over the disc
        const double phi = 2.0 * std::numbers::pi * u.u1;
        e.y[i] = rho * std::cos(phi);
        e.z[i] = rho * std::sin(phi);
    }
    return e;
}

Velocity local_velocity(const SimulationConfig& cfg, double x, double y,
                        double z, double t) {
    const double r = cfg.geometry.lumen_radius(x);  // throws outside [0, l_c]
    const double rho = std::hypot(y, z);
    if (rho > r)
        throw std::domain_error("local_velocity: point outside the lumen");
    const StepContext ctx = StepContext::make(cfg);
    const double u_avg_t = cfg.mean_inlet_velocity(t);
    const double contraction = (ctx.r_c / r) * (ctx.r_c / r);
    const double u0_local = ctx.ratio * u_avg_t * contraction;
    const double ux = ctx.axial(u0_local, r, rho);
    const double sl = ctx.slope(x);
    return {ux, ux * sl * y / r, ux * sl * z / r};
}

void step(ParticleEnsemble& ensemble, const SimulationConfig& cfg, double t,
          double dt) {
    if (!(dt > 0.0)) throw std::domain_error("step: dt must be positive");
    StepContext ctx = StepContext::make(cfg);
    if (dt != cfg.dt) {  // honor an explicit step length
        ctx.dt = dt;
        ctx.sigma = std::sqrt(2.0 * cfg.diffusion.diffusion_coefficient() * dt);
    }
    const double u_avg_t = cfg.mean_inlet_velocity(t);
    const double t0 = cfg.release_time();
    const std::size_t n = ensemble.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!ensemble.alive[i]) continue;
        const AdvanceResult res =
            advance_particle(ctx, ensemble.seed, i, ensemble.draw_index[i],
                             u_avg_t, ensemble.x[i], ensemble.y[i], ensemble.z[i]);
        ++ensemble.draw_index[i];
        if (res.arrived) {
            ensemble.alive[i] = 0;
            ensemble.arrival_time[i] = (t - t0) + res.frac * dt;
        }
    }
    assert(ensemble.alive_count() + ensemble.arrived_count() == n);
}

EmpiricalCIR empirical_cir(std::span<const double> arrival_times,
                           std::uint32_t released,
                           std::span<const double> grid) {
    std::vector<double> sorted;
    sorted.reserve(arrival_times.size());
    for (double t : arrival_times)
        if (!std::isnan(t)) sorted.push_back(t);
    std::sort(sorted.begin(), sorted.end());
    EmpiricalCIR cir;
    cir.grid.assign(grid.begin(), grid.end());
    cir.received.resize(grid.size());
    cir.released = released;
    std::size_t j = 0;
    for (std::size_t k = 0; k < cir.grid.size(); ++k) {
        while (j < sorted.size() && sorted[j] <= cir.grid[k]) ++j;
        cir.received[k] = static_cast<std::uint32_t>(j);
    }
    return cir;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("MC_PLAQUE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 4096)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

EmpiricalCIR run(const SimulationConfig& cfg) {
    return run(cfg, default_worker_count());
}

EmpiricalCIR run(const SimulationConfig& cfg, unsigned workers) {
    if (auto violations = cfg.validate(); !violations.empty())
        throw std::invalid_argument("run: " + violations.front());
    const StepContext ctx = StepContext::make(cfg);
    const double t0 = cfg.release_time();
    const double dt = cfg.dt;
    const auto steps = static_cast<std::size_t>(
        std::ceil(cfg.t_end / dt - 1.0e-9));

    // the inlet velocity history is shared by all particles
    std::vector<double> u_by_step(steps);
    for (std::size_t k = 0; k < steps; ++k)
        u_by_step[k] = cfg.mean_inlet_velocity(t0 + static_cast<double>(k) * dt);

    const std::size_t n = cfg.particle_count;
    std::vector<double> arrivals(n, kNaN);
    const std::uint64_t seed = cfg.seed;

    auto simulate_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const philox::UniformQuad u = philox::uniform_quad(seed, i, 0);
            const double rho = ctx.r_c * std::sqrt(u.u0);
            const double phi = 2.0 * std::numbers::pi * u.u1;
            double x = 0.0;
            double y = rho * std::cos(phi);
            double z = rho * std::sin(phi);
            for (std::size_t k = 0; k < steps; ++k) {
                const AdvanceResult res = advance_particle(
                    ctx, seed, i, k + 1, u_by_step[k], x, y, z);
                if (res.arrived) {
                    // identical accounting to step(): relative to release
                    const double t_abs = t0 + static_cast<double>(k) * dt;
                    arrivals[i] = (t_abs - t0) + res.frac * dt;
                    break;
                }
            }
        }
    };

    const unsigned w = clamp_workers(workers, n);
    if (w == 1) {
        simulate_range(0, n);
    } else {
        // fixed contiguous chunks: the partition never affects any particle's
        // stream, so results are identical for every worker count
        std::vector<std::thread> pool;
        pool.reserve(w);
        const std::size_t chunk = (n + w - 1) / w;
        for (unsigned t = 0; t < w; ++t) {
            const std::size_t begin = static_cast<std::size_t>(t) * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(simulate_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<double> grid(steps);
    for (std::size_t k = 0; k < steps; ++k)
        grid[k] = static_cast<double>(k + 1) * dt;
    EmpiricalCIR cir = empirical_cir(arrivals, static_cast<std::uint32_t>(n), grid);
    cir.config_hash = cfg.content_hash();
    cir.seed = cfg.seed;
    return cir;
}

}  // namespace mcplaque
