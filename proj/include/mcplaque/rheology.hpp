#pragma once

#include <string>
#include <vector>

namespace mcplaque {

enum class FluidKind { newtonian, power_law, herschel_bulkley };

// Constitutive description of the carrier fluid.  shear stress laws:
//   newtonian          tau = K * gamma_dot            (K is the viscosity)
//   power_law          tau = K * gamma_dot^n
//   herschel_bulkley   tau = K * gamma_dot^n + tau_y  (with plug flow below
//                                                      the yield stress)
// zeta = rho_plug / r_lumen is the relative plug radius of the HB model.
struct FluidModel {
    FluidKind kind = FluidKind::newtonian;
    double K = 4.0e-3;       // consistency index [Pa s^n]
    double n = 1.0;          // flow behavior index
    double tau_y = 0.0;      // yield stress [Pa]
    double zeta = 0.0;       // relative plug radius, 0 <= zeta < 1
    double density = 1050.0; // [kg/m^3]

    double m() const { return 1.0 / n; }

    // Stock parameterizations used for model comparisons: an average blood
    // viscosity for the Newtonian fluid, and a shear-thinning consistency
    // with a small yield stress for the generalized models.
    static FluidModel newtonian(double K = 4.0e-3, double density = 1050.0);
    static FluidModel power_law(double K = 17.0e-3, double n = 0.708,
                                double density = 1050.0);
    static FluidModel herschel_bulkley(double K = 17.0e-3, double n = 0.708,
                                       double tau_y = 5.0e-3, double zeta = 0.05,
                                       double density = 1050.0);

    // Every violated invariant as a human-readable message; empty means valid.
    std::vector<std::string> validate() const;
};

// Bulk flow conditions through the healthy cross-section.
struct FlowConditions {
    double u_avg = 0.342;  // cross-section averaged axial velocity [m/s]
};

// Wall shear stress response tau(gamma_dot); HB returns tau_y at zero shear.
double shear_stress(const FluidModel& fluid, double gamma_dot);

// u0 / u_avg for fully developed pipe flow of the given fluid.
double centerline_ratio(const FluidModel& fluid);

// Centerline speed implied by the bulk flow conditions.
double centerline_speed(const FluidModel& fluid, const FlowConditions& flow);

// Fully developed axial velocity at radial offset rho in a pipe of radius
// r_lumen whose centerline speed is u0.  rho in [0, r_lumen].
double axial_velocity(const FluidModel& fluid, double u0, double r_lumen,
                      double rho);

struct PlugRadius {
    double value = 0.0;    // [m]
    bool has_plug = false; // false for fluids without a yield stress
};

// Radius of the unyielded core, zeta * r_lumen for HB fluids.
PlugRadius plug_radius(const FluidModel& fluid, double r_lumen);

// Relative plug radius from the yield and wall shear stresses.  Throws
// std::domain_error when tau_w <= tau_y (unyielded channel).
double zeta_from_wall_stress(double tau_y, double tau_w);

// Area-weighted average of axial_velocity over the lumen disc, by adaptive
// quadrature.  Matches u0 / centerline_ratio to ~1e-9 relative; exists as an
// independent numerical check of the closed-form ratios.
double mean_velocity_check(const FluidModel& fluid, double u0, double r_lumen);

}  // namespace mcplaque
