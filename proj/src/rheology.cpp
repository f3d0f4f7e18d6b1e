#include "mcplaque/rheology.hpp"

#include <cmath>
#include <stdexcept>

#include "mcplaque/numerics.hpp"

namespace mcplaque {

FluidModel FluidModel::newtonian(double K, double density) {
    return FluidModel{FluidKind::newtonian, K, 1.0, 0.0, 0.0, density};
}

FluidModel FluidModel::power_law(double K, double n, double density) {
    return FluidModel{FluidKind::power_law, K, n, 0.0, 0.0, density};
}

FluidModel FluidModel::herschel_bulkley(double K, double n, double tau_y,
                                        double zeta, double density) {
    return FluidModel{FluidKind::herschel_bulkley, K, n, tau_y, zeta, density};
}

std::vector<std::string> FluidModel::validate() const {
    std::vector<std::string> violations;
    if (!(K > 0.0)) violations.push_back("K must be positive");
    if (!(n > 0.0 && n <= 1.5)) violations.push_back("n must be in (0, 1.5]");
    if (!(tau_y >= 0.0)) violations.push_back("tau_y must be nonnegative");
    if (!(zeta >= 0.0 && zeta < 1.0))
        violations.push_back("zeta must be in [0, 1)");
    if (!(density > 0.0)) violations.push_back("density must be positive");
    if (kind == FluidKind::newtonian && n != 1.0)
        violations.push_back("newtonian model requires n = 1");
    if (kind != FluidKind::herschel_bulkley && tau_y != 0.0)
        violations.push_back("only the Herschel-Bulkley model carries a yield stress");
    if (kind != FluidKind::herschel_bulkley && zeta != 0.0)
        violations.push_back("only the Herschel-Bulkley model carries a plug");
    return violations;
}

double shear_stress(const FluidModel& fluid, double gamma_dot) {
    if (!(gamma_dot >= 0.0))
        throw std::domain_error("shear_stress: shear rate must be nonnegative");
    switch (fluid.kind) {
        case FluidKind::newtonian:
            return fluid.K * gamma_dot;
        case FluidKind::power_law:
            return fluid.K * std::pow(gamma_dot, fluid.n);
        case FluidKind::herschel_bulkley:
            return fluid.tau_y + fluid.K * std::pow(gamma_dot, fluid.n);
    }
    throw std::logic_error("shear_stress: unknown fluid kind");
}

double centerline_ratio(const FluidModel& fluid) {
    switch (fluid.kind) {
        case FluidKind::newtonian:
            return 2.0;
        case FluidKind::power_law: {
            const double m = fluid.m();
            return (m + 3.0) / (m + 1.0);
        }
        case FluidKind::herschel_bulkley: {
            // (m+2)(m+3) / (2 zeta^2 + 2(m+1) zeta + (m+2)(m+1))
            const double m = fluid.m();
            const double z = fluid.zeta;
            return (m + 2.0) * (m + 3.0) /
                   (2.0 * z * z + 2.0 * (m + 1.0) * z + (m + 2.0) * (m + 1.0));
        }
    }
    throw std::logic_error("centerline_ratio: unknown fluid kind");
}

double centerline_speed(const FluidModel& fluid, const FlowConditions& flow) {
    if (!(flow.u_avg > 0.0))
        throw std::domain_error("centerline_speed: u_avg must be positive");
    return centerline_ratio(fluid) * flow.u_avg;
}

double axial_velocity(const FluidModel& fluid, double u0, double r_lumen,
                      double rho) {
    if (!(r_lumen > 0.0))
        throw std::domain_error("axial_velocity: r_lumen must be positive");
    if (!(rho >= 0.0 && rho <= r_lumen))
        throw std::domain_error("axial_velocity: rho outside [0, r_lumen]");
    switch (fluid.kind) {
        case FluidKind::newtonian: {
            const double xi = rho / r_lumen;
            return u0 * (1.0 - xi * xi);
        }
        case FluidKind::power_law: {
            const double xi = rho / r_lumen;
            return u0 * (1.0 - std::pow(xi, fluid.m() + 1.0));
        }
        case FluidKind::herschel_bulkley: {
            const double rho_p = fluid.zeta * r_lumen;
            if (rho < rho_p) return u0;  // unyielded core moves as a plug
            const double xi = (rho - rho_p) / (r_lumen - rho_p);
            return u0 * (1.0 - std::pow(xi, fluid.m() + 1.0));
        }
    }
    throw std::logic_error("axial_velocity: unknown fluid kind");
}

PlugRadius plug_radius(const FluidModel& fluid, double r_lumen) {
    if (!(r_lumen > 0.0))
        throw std::domain_error("plug_radius: r_lumen must be positive");
    if (fluid.kind != FluidKind::herschel_bulkley) return {0.0, false};
    return {fluid.zeta * r_lumen, true};
}

double zeta_from_wall_stress(double tau_y, double tau_w) {
    if (!(tau_y >= 0.0))
        throw std::domain_error("zeta_from_wall_stress: tau_y must be nonnegative");
    if (!(tau_w > tau_y))
        throw std::domain_error(
            "zeta_from_wall_stress: tau_w <= tau_y leaves the channel unyielded");
    return tau_y / tau_w;
}

double mean_velocity_check(const FluidModel& fluid, double u0, double r_lumen) {
    if (!(r_lumen > 0.0))
        throw std::domain_error("mean_velocity_check: r_lumen must be positive");
    auto integrand = [&](double rho) {
        return axial_velocity(fluid, u0, r_lumen, rho) * rho;
    };
    // split at the plug edge so the kink does not slow convergence
    double integral;
    if (fluid.kind == FluidKind::herschel_bulkley && fluid.zeta > 0.0) {
        const double rho_p = fluid.zeta * r_lumen;
        integral = 0.5 * u0 * rho_p * rho_p  // plug part, exact
                   + integrate_adaptive(integrand, rho_p, r_lumen);
    } else {
        integral = integrate_adaptive(integrand, 0.0, r_lumen);
    }
    return 2.0 * integral / (r_lumen * r_lumen);
}

}  // namespace mcplaque
