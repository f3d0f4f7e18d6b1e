#pragma once

#include <optional>
#include <vector>

#include "mcplaque/geometry.hpp"
#include "mcplaque/rheology.hpp"

namespace mcplaque {

// Closed-form channel impulse responses for a straight channel of length l_c
// under fully developed flow with centerline speed u0: h(t) is the fraction
// of molecules released uniformly over the TX cross-section that have crossed
// the RX plane by time t (advection only).  All are 0 for t < l_c/u0,
// nondecreasing, and tend to 1.
double cir_newtonian(double t, double u0, double l_c);
double cir_power_law(double t, double u0, double l_c, double m);
// The HB response jumps to zeta^2 at the front: the plug arrives as one slab.
double cir_herschel_bulkley(double t, double u0, double l_c, double m,
                            double zeta);

// CIR of a fluid model, dispatching on its kind.
struct AnalyticalCIR {
    FluidModel fluid;
    double u0 = 0.684;
    double l_c = 50.0e-3;
    double operator()(double t) const;
};

// Time for a centerline tracer to traverse [0, l_c] when the local speed
// scales as u0 * (r_c / r(x))^2 (volume conservation through the narrowing):
//   T = (1/u0) * integral of (r(x)/r_c)^2 dx,
// evaluated in closed form for the piecewise-linear lumen profile.
double venturi_traversal_time(const VesselGeometry& geom, double u0);

// Relative traversal-time reduction (T_ideal - T) / T_ideal, T_ideal = l_c/u0.
double venturi_time_reduction(const VesselGeometry& geom);

// Effective propagation speed-up T_ideal / T - 1.
double venturi_speed_increase(const VesselGeometry& geom);

struct VenturiRow {
    double l_c;
    double r_p_rel;
    double time_reduction;
    double speed_increase;
};

// Sweep r_p / r_c over [0, 1) with `samples` points for every channel length
// in l_c_values, keeping the plaque lengths of `base` and centering the
// plaque mid-channel.  Throws std::domain_error when a footprint would not
// fit into its channel.
std::vector<VenturiRow> venturi_reduction_curve(
    const VesselGeometry& base, const std::vector<double>& l_c_values,
    int samples);

// Stokes-Einstein diffusion of a spherical particle in a viscous fluid.
struct DiffusionSpec {
    double k_boltzmann = 1.38e-23;  // [J/K]
    double temperature = 300.0;     // [K]
    double eta = 4.0e-3;            // dynamic viscosity [Pa s]
    double r_particle = 50.0e-9;    // hydrodynamic radius [m]
    std::optional<double> override_D;  // bypass the formula when set

    std::vector<std::string> validate() const;
    double diffusion_coefficient() const;  // override_D or Stokes-Einstein
};

// D = k_B T / (6 pi eta r)
double stokes_einstein_diffusion(const DiffusionSpec& spec);

enum class FlowRegime { flow_dominated, dispersive };

// Relative weight of diffusive vs advective transport over the channel.
struct DispersionFactor {
    double alpha;       // D * l_c / (u_avg * r_c^2)
    FlowRegime regime;  // flow_dominated iff alpha < 1e-2
};

inline constexpr double kFlowDominatedThreshold = 1.0e-2;

DispersionFactor dispersion_factor(double D, double l_c, double u_avg,
                                   double r_c);

}  // namespace mcplaque
