#include "mcplaque/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace mcplaque {

VesselGeometry VesselGeometry::with_relative_plaque(double r_p_rel) {
    if (!(r_p_rel >= 0.0 && r_p_rel < 1.0))
        throw std::invalid_argument(
            "with_relative_plaque: r_p_rel must lie in [0, 1)");
    VesselGeometry g;
    g.r_p = r_p_rel * g.r_c;
    return g;
}

namespace {

void check_domain(const VesselGeometry& g, double x, const char* who) {
    if (!(x >= 0.0 && x <= g.l_c))
        throw std::domain_error(std::string(who) + ": x outside [0, l_c]");
}

}  // namespace

double VesselGeometry::lumen_radius(double x) const {
    check_domain(*this, x, "lumen_radius");
    // evaluate via |x - x_center| so the profile is mirror-symmetric exactly
    const double d = std::abs(x - x_center);
    if (d >= 0.5 * l_p_outer) return r_c;
    if (d <= 0.5 * l_p_inner) return r_c - r_p;
    return r_c - r_p * (0.5 * l_p_outer - d) / ramp_length();
}

double VesselGeometry::lumen_slope(double x) const {
    check_domain(*this, x, "lumen_slope");
    const double d = std::abs(x - x_center);
    if (d >= 0.5 * l_p_outer || d <= 0.5 * l_p_inner) return 0.0;
    const double toward_center = r_p / ramp_length();  // dr/dd
    return x < x_center ? -toward_center : toward_center;
}

int VesselGeometry::region_of(double x) const {
    check_domain(*this, x, "region_of");
    // half-open intervals: a boundary point belongs to the downstream region
    if (x < footprint_start()) return 1;
    if (x < plateau_start()) return 2;
    if (x < plateau_end()) return 3;
    if (x < footprint_end()) return 4;
    return 1;
}

std::vector<std::string> VesselGeometry::validate() const {
    std::vector<std::string> violations;
    if (!(r_c > 0.0)) violations.push_back("r_c must be positive");
    if (!(l_c > 0.0)) violations.push_back("l_c must be positive");
    if (!(r_p >= 0.0)) violations.push_back("r_p must be nonnegative");
    if (!(r_p < r_c))
        violations.push_back("r_p must be smaller than r_c (full occlusion)");
    if (!(l_p_inner > 0.0)) violations.push_back("l_p_inner must be positive");
    if (!(l_p_inner <= l_p_outer))
        violations.push_back("l_p_inner must not exceed l_p_outer");
    if (!(footprint_start() >= 0.0 && footprint_end() <= l_c))
        violations.push_back("plaque footprint must lie within [0, l_c]");
    return violations;
}

}  // namespace mcplaque
