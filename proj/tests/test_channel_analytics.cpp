#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "mcplaque/channel_analytics.hpp"
#include "mcplaque/numerics.hpp"

using namespace mcplaque;

namespace {
constexpr double kTminNewt = 0.0730994152046784;   // 0.05 / 0.684
constexpr double kU0Pl = 0.6255316159250585;       // 1.82903981... * 0.342
constexpr double kU0Hb = 0.6073641377090186;       // 1.77591853... * 0.342
constexpr double kMPl = 1.4124293785310734;        // 1 / 0.708
}  // namespace

TEST_CASE("newtonian impulse response") {
    const double u0 = 0.684, l_c = 0.05;
    CHECK(cir_newtonian(0.0, u0, l_c) == 0.0);
    CHECK(cir_newtonian(kTminNewt * 0.999, u0, l_c) == 0.0);
    // h(2 t_min) = 1 - 1/2
    CHECK(cir_newtonian(2.0 * kTminNewt, u0, l_c) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cir_newtonian(1.0e9, u0, l_c) == doctest::Approx(1.0));
    // nondecreasing
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double h = cir_newtonian(1.0e-3 * i, u0, l_c);
        CHECK(h >= prev);
        prev = h;
    }
}

TEST_CASE("power-law impulse response") {
    const double l_c = 0.05;
    const double t_min = l_c / kU0Pl;
    CHECK(cir_power_law(t_min * 0.9999, kU0Pl, l_c, kMPl) == 0.0);
    // (1 - 1/2)^(2/(m+1)) at the power-law exponent for n = 0.708
    CHECK(cir_power_law(2.0 * t_min, kU0Pl, l_c, kMPl) ==
          doctest::Approx(0.5629037589486360).epsilon(1e-12));
    // shear-thinning beats the parabola early: flatter front, more mass
    CHECK(cir_power_law(2.0 * t_min, kU0Pl, l_c, kMPl) > 0.5);
}

TEST_CASE("herschel-bulkley impulse response jumps to zeta^2") {
    const double l_c = 0.05, zeta = 0.05;
    const double t_min = l_c / kU0Hb;
    CHECK(cir_herschel_bulkley(t_min * (1.0 - 1.0e-12), kU0Hb, l_c, kMPl,
                               zeta) == 0.0);
    // right-continuous at the front: the whole plug lands at once
    CHECK(cir_herschel_bulkley(t_min, kU0Hb, l_c, kMPl, zeta) ==
          doctest::Approx(zeta * zeta).epsilon(1e-12));
    CHECK(cir_herschel_bulkley(1.5 * t_min, kU0Hb, l_c, kMPl, zeta) ==
          doctest::Approx(0.4257386823212750).epsilon(1e-12));
    CHECK(cir_herschel_bulkley(2.0 * t_min, kU0Hb, l_c, kMPl, zeta) ==
          doctest::Approx(0.5817962092641230).epsilon(1e-12));
}

TEST_CASE("functor dispatches to the model-specific response") {
    const FlowConditions flow{0.342};
    const double t = 0.2;
    const AnalyticalCIR newt{FluidModel::newtonian(), 0.684, 0.05};
    CHECK(newt(t) == cir_newtonian(t, 0.684, 0.05));
    const AnalyticalCIR pl{FluidModel::power_law(), kU0Pl, 0.05};
    CHECK(pl(t) == cir_power_law(t, kU0Pl, 0.05, kMPl));
    const AnalyticalCIR hb{FluidModel::herschel_bulkley(), kU0Hb, 0.05};
    CHECK(hb(t) == cir_herschel_bulkley(t, kU0Hb, 0.05, kMPl, 0.05));
    (void)flow;
}

TEST_CASE("venturi traversal time, closed form") {
    SUBCASE("no plaque degenerates to l_c / u0") {
        const VesselGeometry g;
        CHECK(venturi_traversal_time(g, 0.684) ==
              doctest::Approx(0.05 / 0.684).epsilon(1e-15));
        CHECK(venturi_speed_increase(g) == doctest::Approx(0.0));
        CHECK(venturi_time_reduction(g) == doctest::Approx(0.0));
    }
    SUBCASE("quoted severities at 50 mm") {
        CHECK(venturi_speed_increase(VesselGeometry::with_relative_plaque(0.25)) ==
              doctest::Approx(2.0 / 13.0).epsilon(1e-12));
        CHECK(venturi_speed_increase(VesselGeometry::with_relative_plaque(0.5)) ==
              doctest::Approx(7.0 / 23.0).epsilon(1e-12));
        CHECK(venturi_speed_increase(VesselGeometry::with_relative_plaque(0.75)) ==
              doctest::Approx(3.0 / 7.0).epsilon(1e-12));
        CHECK(venturi_time_reduction(VesselGeometry::with_relative_plaque(0.25)) ==
              doctest::Approx(2.0 / 15.0).epsilon(1e-12));
        CHECK(venturi_time_reduction(VesselGeometry::with_relative_plaque(0.5)) ==
              doctest::Approx(7.0 / 30.0).epsilon(1e-12));
        CHECK(venturi_time_reduction(VesselGeometry::with_relative_plaque(0.75)) ==
              doctest::Approx(0.3).epsilon(1e-12));
    }
}

TEST_CASE("closed form agrees with quadrature of the area profile") {
    // T = (1/u0) * integral (r(x)/r_c)^2 dx, integrated adaptively
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> rel(0.0, 0.95);
    std::uniform_real_distribution<double> len(30.0e-3, 120.0e-3);
    for (int i = 0; i < 40; ++i) {
        VesselGeometry g;
        g.l_c = len(rng);
        g.x_center = 0.5 * g.l_c;
        g.r_p = rel(rng) * g.r_c;
        REQUIRE(g.validate().empty());
        const double u0 = 0.684;
        const double quad =
            integrate_adaptive(
                [&](double x) {
                    const double r = g.lumen_radius(x) / g.r_c;
                    return r * r;
                },
                0.0, g.l_c, 1.0e-12) /
            u0;
        CHECK(venturi_traversal_time(g, u0) ==
              doctest::Approx(quad).epsilon(1e-9));
    }
}

TEST_CASE("reduction curve sweeps severity for every channel length") {
    const auto rows =
        venturi_reduction_curve(VesselGeometry{}, {25.0e-3, 50.0e-3}, 20);
    REQUIRE(rows.size() == 40);
    CHECK(rows[0].l_c == 25.0e-3);
    CHECK(rows[0].r_p_rel == 0.0);
    CHECK(rows[0].time_reduction == doctest::Approx(0.0));
    CHECK(rows[1].r_p_rel == doctest::Approx(0.05));
    CHECK(rows[20].l_c == 50.0e-3);
    // reduction grows with severity at fixed length
    for (int i = 1; i < 20; ++i)
        CHECK(rows[i].time_reduction > rows[i - 1].time_reduction);
    // shorter channel, same footprint: the narrowing dominates more
    CHECK(rows[15].time_reduction > rows[20 + 15].time_reduction);
    // the r_p_rel = 0.75 row of the 50 mm sweep carries the quoted speed-up
    CHECK(rows[20 + 15].speed_increase == doctest::Approx(3.0 / 7.0));

    // a footprint longer than the channel cannot be represented
    VesselGeometry tiny;
    CHECK_THROWS_AS(venturi_reduction_curve(tiny, {10.0e-3}, 4),
                    std::domain_error);
}

TEST_CASE("stokes-einstein diffusion of a 50 nm carrier") {
    const DiffusionSpec spec;
    CHECK(spec.validate().empty());
    CHECK(stokes_einstein_diffusion(spec) ==
          doctest::Approx(1.0981691073340778e-12).epsilon(1e-12));
    CHECK(spec.diffusion_coefficient() == stokes_einstein_diffusion(spec));

    DiffusionSpec thin = spec;
    thin.eta = 1.0e-3;  // water-like: 4x the diffusion
    CHECK(stokes_einstein_diffusion(thin) ==
          doctest::Approx(4.392676429336311e-12).epsilon(1e-12));

    DiffusionSpec forced = spec;
    forced.override_D = 2.5e-12;
    CHECK(forced.diffusion_coefficient() == 2.5e-12);

    DiffusionSpec bad = spec;
    bad.r_particle = 0.0;
    CHECK(!bad.validate().empty());
    bad = spec;
    bad.temperature = -1.0;
    CHECK(!bad.validate().empty());
    bad = spec;
    bad.override_D = -1.0e-12;
    CHECK(!bad.validate().empty());
}

TEST_CASE("dispersion factor classifies the default channel as flow-dominated") {
    const auto d = dispersion_factor(1.0981691073340778e-12, 0.05, 0.342,
                                     3.0e-3);
    CHECK(d.alpha == doctest::Approx(1.7839004342658834e-8).epsilon(1e-12));
    CHECK(d.regime == FlowRegime::flow_dominated);

    // alpha at the threshold is not flow-dominated
    const auto edge = dispersion_factor(kFlowDominatedThreshold, 1.0, 1.0, 1.0);
    CHECK(edge.regime == FlowRegime::dispersive);
    const auto below =
        dispersion_factor(kFlowDominatedThreshold * 0.999, 1.0, 1.0, 1.0);
    CHECK(below.regime == FlowRegime::flow_dominated);
}
