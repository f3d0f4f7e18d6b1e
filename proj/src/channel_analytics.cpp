#include "mcplaque/channel_analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcplaque {

namespace {

void check_cir_args(double t, double u0, double l_c, const char* who) {
    if (!(t >= 0.0))
        throw std::domain_error(std::string(who) + ": t must be nonnegative");
    if (!(u0 > 0.0))
        throw std::domain_error(std::string(who) + ": u0 must be positive");
    if (!(l_c > 0.0))
        throw std::domain_error(std::string(who) + ": l_c must be positive");
}

}  // namespace

double cir_newtonian(double t, double u0, double l_c) {
    check_cir_args(t, u0, l_c, "cir_newtonian");
    const double t_min = l_c / u0;
    if (t <= t_min) return 0.0;
    return 1.0 - l_c / (u0 * t);
}

double cir_power_law(double t, double u0, double l_c, double m) {
    check_cir_args(t, u0, l_c, "cir_power_law");
    if (!(m > 0.0))
        throw std::domain_error("cir_power_law: m must be positive");
    const double t_min = l_c / u0;
    if (t <= t_min) return 0.0;
    return std::pow(1.0 - l_c / (u0 * t), 2.0 / (m + 1.0));
}

double cir_herschel_bulkley(double t, double u0, double l_c, double m,
                            double zeta) {
    check_cir_args(t, u0, l_c, "cir_herschel_bulkley");
    if (!(m > 0.0))
        throw std::domain_error("cir_herschel_bulkley: m must be positive");
    if (!(zeta >= 0.0 && zeta < 1.0))
        throw std::domain_error("cir_herschel_bulkley: zeta outside [0, 1)");
    const double t_min = l_c / u0;
    if (t < t_min) return 0.0;
    // right-continuous at the front: the plug (area fraction zeta^2) arrives
    // as a single slab at t_min
    const double root = std::pow(1.0 - l_c / (u0 * t), 1.0 / (m + 1.0));
    const double s = zeta + (1.0 - zeta) * root;
    return s * s;
}

double AnalyticalCIR::operator()(double t) const {
    switch (fluid.kind) {
        case FluidKind::newtonian:
            return cir_newtonian(t, u0, l_c);
        case FluidKind::power_law:
            return cir_power_law(t, u0, l_c, fluid.m());
        case FluidKind::herschel_bulkley:
            return cir_herschel_bulkley(t, u0, l_c, fluid.m(), fluid.zeta);
    }
    throw std::logic_error("AnalyticalCIR: unknown fluid kind");
}

double venturi_traversal_time(const VesselGeometry& geom, double u0) {
    if (!(u0 > 0.0))
        throw std::domain_error("venturi_traversal_time: u0 must be positive");
    if (auto violations = geom.validate(); !violations.empty())
        throw std::domain_error("venturi_traversal_time: " + violations.front());
    // T*u0 = sum of (r/r_c)^2 over the four regions; a linear ramp from r_c
    // to r_c - r_p of length L contributes L*(1 - p + p^2/3), p = r_p/r_c
    const double p = geom.r_p / geom.r_c;
    const double straight = geom.l_c - geom.l_p_outer;
    const double plateau = geom.l_p_inner * (1.0 - p) * (1.0 - p);
    const double ramps =
        (geom.l_p_outer - geom.l_p_inner) * (1.0 - p + p * p / 3.0);
    return (straight + plateau + ramps) / u0;
}

double venturi_time_reduction(const VesselGeometry& geom) {
    const double t_ideal = geom.l_c;           // at u0 = 1
    const double t = venturi_traversal_time(geom, 1.0);
    return (t_ideal - t) / t_ideal;
}

double venturi_speed_increase(const VesselGeometry& geom) {
    const double t_ideal = geom.l_c;
    const double t = venturi_traversal_time(geom, 1.0);
    return t_ideal / t - 1.0;
}

std::vector<VenturiRow> venturi_reduction_curve(
    const VesselGeometry& base, const std::vector<double>& l_c_values,
    int samples) {
    if (samples < 2)
        throw std::domain_error("venturi_reduction_curve: need at least 2 samples");
    std::vector<VenturiRow> rows;
    rows.reserve(l_c_values.size() * static_cast<std::size_t>(samples));
    for (double l_c : l_c_values) {
        VesselGeometry geom = base;
        geom.l_c = l_c;
        geom.x_center = 0.5 * l_c;
        if (geom.footprint_start() < 0.0 || geom.footprint_end() > l_c)
            throw std::domain_error(
                "venturi_reduction_curve: plaque footprint exceeds channel length");
        for (int i = 0; i < samples; ++i) {
            const double r_p_rel = static_cast<double>(i) / samples;  // [0, 1)
            geom.r_p = r_p_rel * geom.r_c;
            rows.push_back({l_c, r_p_rel, venturi_time_reduction(geom),
                            venturi_speed_increase(geom)});
        }
    }
    return rows;
}

std::vector<std::string> DiffusionSpec::validate() const {
    std::vector<std::string> violations;
    if (!(k_boltzmann > 0.0)) violations.push_back("k_boltzmann must be positive");
    if (!(temperature > 0.0)) violations.push_back("temperature must be positive");
    if (!(eta > 0.0)) violations.push_back("eta must be positive");
    if (!(r_particle > 0.0)) violations.push_back("r_particle must be positive");
    if (override_D && !(*override_D >= 0.0))
        violations.push_back("diffusion override must be nonnegative");
    return violations;
}

double DiffusionSpec::diffusion_coefficient() const {
    if (override_D) return *override_D;
    return stokes_einstein_diffusion(*this);
}

double stokes_einstein_diffusion(const DiffusionSpec& spec) {
    if (auto violations = spec.validate(); !violations.empty())
        throw std::domain_error("stokes_einstein_diffusion: " + violations.front());
    return spec.k_boltzmann * spec.temperature /
           (6.0 * std::numbers::pi * spec.eta * spec.r_particle);
}

DispersionFactor dispersion_factor(double D, double l_c, double u_avg,
                                   double r_c) {
    if (!(D >= 0.0))
        throw std::domain_error("dispersion_factor: D must be nonnegative");
    if (!(l_c > 0.0 && u_avg > 0.0 && r_c > 0.0))
        throw std::domain_error(
            "dispersion_factor: l_c, u_avg and r_c must be positive");
    const double alpha = D * l_c / (u_avg * r_c * r_c);
    return {alpha, alpha < kFlowDominatedThreshold ? FlowRegime::flow_dominated
                                                   : FlowRegime::dispersive};
}

}  // namespace mcplaque
