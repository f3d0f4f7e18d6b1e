#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mcplaque/channel_analytics.hpp"
#include "mcplaque/geometry.hpp"
#include "mcplaque/pulsatile.hpp"
#include "mcplaque/rheology.hpp"

namespace mcplaque {

// Inlet bulk velocity held constant in time.
struct ConstantFlow {
    double u_avg = 0.342;  // [m/s]
};

// Inlet bulk velocity follows a periodic waveform; particles are released at
// absolute time release_time (a phase within the cycle).  waveform_path
// records where a file-loaded table came from (empty for the built-in one);
// it is serialization provenance only and does not enter the content hash.
struct PulsatileFlow {
    PulsatileWaveform waveform;  // already normalized to the target u_avg
    double release_time = 0.16;
    std::string waveform_path;
    double u_avg = 0.342;  // normalization target [m/s]
};

using FlowMode = std::variant<ConstantFlow, PulsatileFlow>;

// Full description of one Monte-Carlo transport run.
struct SimulationConfig {
    VesselGeometry geometry;
    FluidModel fluid;
    DiffusionSpec diffusion;
    FlowMode flow = ConstantFlow{};
    std::uint32_t particle_count = 1000;
    double dt = 1.0e-4;    // [s]
    double t_end = 1.0;    // simulated span after release [s]
    std::uint64_t seed = 1;

    // Absolute time of particle release (0 for constant flow).
    double release_time() const;
    // Cross-section averaged inlet velocity at absolute time t.
    double mean_inlet_velocity(double t) const;
    // Every violated invariant; empty means valid.
    std::vector<std::string> validate() const;
    // Order-independent digest of all physical content (geometry, fluid,
    // diffusion, flow mode incl. waveform samples, counts, stepping, seed).
    std::uint64_t content_hash() const;
};

// Structure-of-arrays particle state.  A particle is either alive (inside the
// lumen, x < l_c) or arrived (frozen; arrival_time holds the RX-plane
// crossing time relative to release).  draw_index counts the RNG blocks the
// particle has consumed, so per-particle streams are scheduling-independent.
struct ParticleEnsemble {
    std::vector<double> x, y, z;
    std::vector<std::uint8_t> alive;
    std::vector<double> arrival_time;  // NaN until arrival
    std::vector<std::uint64_t> draw_index;
    std::uint64_t seed = 0;

    std::size_t size() const { return x.size(); }
    std::size_t alive_count() const;
    std::size_t arrived_count() const;
};

// Release particle_count particles at x = 0, uniformly over the inlet disc
// (rho = r_c * sqrt(U), uniform angle), using draw 0 of each particle stream.
ParticleEnsemble release_ensemble(const SimulationConfig& cfg);

struct Velocity {
    double x, y, z;
};

// Quasi-steady local fluid velocity at position (x, y, z) and absolute time
// t: the fully developed profile of the local cross-section, scaled by
// continuity, with a radial component following the wall slope.  Throws
// std::domain_error outside the lumen.
Velocity local_velocity(const SimulationConfig& cfg, double x, double y,
                        double z, double t);

// Advance every alive particle by one Euler-Maruyama step of length dt
// starting at absolute time t: advect, diffuse, reflect specularly off the
// lumen wall and the inlet plane, and freeze particles crossing x >= l_c
// with a sub-step linear interpolation of the arrival time (relative to
// cfg.release_time()).
void step(ParticleEnsemble& ensemble, const SimulationConfig& cfg, double t,
          double dt);

// Cumulative fraction-received record on a fixed time grid.
struct EmpiricalCIR {
    std::vector<double> grid;             // times since release, increasing
    std::vector<std::uint32_t> received;  // cumulative arrivals per grid time
    std::uint32_t released = 0;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

// Count arrivals (NaN = never arrived) against a grid of times.
EmpiricalCIR empirical_cir(std::span<const double> arrival_times,
                           std::uint32_t released,
                           std::span<const double> grid);

// Release at cfg.release_time() and step until t_end has elapsed, returning
// cumulative arrivals on the step grid (dt, 2 dt, ...).  Results are
// identical for any worker count; the default count honors the
// MC_PLAQUE_THREADS environment variable (all cores otherwise).
EmpiricalCIR run(const SimulationConfig& cfg);
EmpiricalCIR run(const SimulationConfig& cfg, unsigned workers);

// Worker count from MC_PLAQUE_THREADS, else hardware concurrency.
unsigned default_worker_count();

}  // namespace mcplaque
