#pragma once

#include <string>
#include <vector>

namespace mcplaque {

// Axisymmetric cylindrical vessel of length l_c and healthy lumen radius r_c,
// with a single plaque deposit of height r_p centered at x_center.  The lumen
// narrows linearly from r_c to r_c - r_p over each plaque shoulder and stays
// at r_c - r_p over the inner plateau:
//
//   region 1 | 2 (ramp) | 3 (plateau) | 4 (ramp) | 1
//            |<-------- l_p_outer  -------->|
//                  |<-- l_p_inner -->|
//
// All lengths in meters.  x runs from the transmitter plane (x = 0) to the
// receiver plane (x = l_c).
struct VesselGeometry {
    double r_c = 3.0e-3;       // healthy lumen radius
    double l_c = 50.0e-3;      // channel length (TX to RX plane)
    double r_p = 0.0;          // plaque height, 0 <= r_p < r_c
    double l_p_outer = 20.0e-3;  // plaque footprint length along the wall
    double l_p_inner = 10.0e-3;  // length of the fully narrowed plateau
    double x_center = 25.0e-3;   // axial center of the plaque

    // Geometry with the stock channel dimensions and a plaque of relative
    // height r_p_rel = r_p / r_c centered mid-channel.
    static VesselGeometry with_relative_plaque(double r_p_rel);

    double footprint_start() const { return x_center - 0.5 * l_p_outer; }
    double footprint_end() const { return x_center + 0.5 * l_p_outer; }
    double plateau_start() const { return x_center - 0.5 * l_p_inner; }
    double plateau_end() const { return x_center + 0.5 * l_p_inner; }
    double ramp_length() const { return 0.5 * (l_p_outer - l_p_inner); }

    // Lumen radius at axial position x in [0, l_c].  Throws std::domain_error
    // outside that range.
    double lumen_radius(double x) const;

    // d(lumen_radius)/dx; zero in regions 1 and 3, +-r_p/ramp_length on the
    // shoulders.  Same domain as lumen_radius.
    double lumen_slope(double x) const;

    // Region index (1..4) at x; boundary points belong to the downstream
    // region.  Same domain as lumen_radius.
    int region_of(double x) const;

    // Every violated invariant as a human-readable message; empty means valid.
    std::vector<std::string> validate() const;
};

}  // namespace mcplaque
