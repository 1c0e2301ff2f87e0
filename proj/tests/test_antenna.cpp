#include <cmath>

#include "doctest.h"
#include "support/approx.hpp"
#include "leoshare/antenna.hpp"
#include "leoshare/config.hpp"
#include "leoshare/units.hpp"
#include "support/fixtures.hpp"

using namespace leoshare;
using leoshare::testing::approx;

TEST_CASE("aligned VSAT uplink gain") {
    const GainProfile g = load_preset("vsat").base.gains;
    const double k = kSpeedOfLight / (4.0 * kPi * 28e9);
    const double expected = std::pow(10.0, 7.87) * k * k;
    CHECK(effective_gain(g, NodeKind::SatelliteUser, NodeKind::Satellite, true) ==
          approx(expected).epsilon(1e-12));
    CHECK(effective_gain(g, NodeKind::Satellite, NodeKind::SatelliteUser, true) ==
          approx(expected).epsilon(1e-12));
    const double side = std::pow(10.0, (31.5 + 21.2) / 10.0) * k * k;
    CHECK(effective_gain(g, NodeKind::SatelliteUser, NodeKind::Satellite, false) ==
          approx(side).epsilon(1e-12));
}

TEST_CASE("identity configuration gives unit gain") {
    const GainProfile g = leoshare::testing::unit_gains();
    CHECK(g.free_space_factor() == approx(1.0).epsilon(1e-15));
    CHECK(effective_gain(g, NodeKind::SatelliteUser, NodeKind::Satellite, true) == approx(1.0));
    CHECK(effective_gain(g, NodeKind::TerrestrialUser, NodeKind::SatelliteUser, false) == approx(1.0));
    CHECK(effective_gain(g, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::Low) == approx(1.0));
}

TEST_CASE("BS level selection") {
    const GainProfile g = load_preset("handheld").base.gains;
    const double low = effective_gain(g, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::Low);
    const double high = effective_gain(g, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::High);
    const double main = effective_gain(g, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::Main);
    CHECK(low / high == approx(std::pow(10.0, -1.6)).epsilon(1e-12));
    CHECK(main / high == approx(std::pow(10.0, 1.2)).epsilon(1e-12));
    // The BS to satellite-user link always uses the high side lobe.
    CHECK(effective_gain(g, NodeKind::BaseStation, NodeKind::SatelliteUser, false) ==
          approx(g.satellite_user.side * g.bs_high_side * g.free_space_factor()));

    const double psi1 = deg_to_rad(10.0);
    const double psi2 = deg_to_rad(40.0);
    CHECK(bs_gain_by_elevation(g, 0.0, psi1, psi2) == g.bs.main);
    CHECK(bs_gain_by_elevation(g, psi1, psi1, psi2) == g.bs.main);
    CHECK(bs_gain_by_elevation(g, std::nextafter(psi1, 1.0), psi1, psi2) == g.bs_high_side);
    CHECK(bs_gain_by_elevation(g, psi2, psi1, psi2) == g.bs_high_side);
    CHECK(bs_gain_by_elevation(g, kPi / 2, psi1, psi2) == g.bs_low_side);
    CHECK(bs_level_by_elevation(deg_to_rad(25.0), psi1, psi2) == BsLevel::High);
}

TEST_CASE("invalid links") {
    const GainProfile g = leoshare::testing::unit_gains();
    CHECK_THROWS_AS(effective_gain(g, NodeKind::BaseStation, NodeKind::Satellite, false), std::invalid_argument);
    CHECK_THROWS_AS(effective_gain(g, NodeKind::BaseStation, NodeKind::SatelliteUser, true), std::invalid_argument);
    CHECK_THROWS_AS(effective_gain(g, NodeKind::Satellite, NodeKind::BaseStation, false), std::invalid_argument);
    CHECK_THROWS_AS(effective_gain(g, NodeKind::TerrestrialUser, NodeKind::BaseStation, false), std::invalid_argument);
    CHECK_THROWS_AS(effective_gain(g, NodeKind::Satellite, NodeKind::Satellite, false), std::invalid_argument);
}

TEST_CASE("main and side are interchangeable only when equal") {
    GainProfile g = leoshare::testing::unit_gains();
    g.satellite = {3.0, 3.0};
    g.satellite_user = {2.0, 2.0};
    GainProfile swapped = g;
    std::swap(swapped.satellite.main, swapped.satellite.side);
    CHECK(effective_gain(g, NodeKind::SatelliteUser, NodeKind::Satellite, true) ==
          effective_gain(swapped, NodeKind::SatelliteUser, NodeKind::Satellite, true));
    g.satellite = {5.0, 3.0};
    CHECK(effective_gain(g, NodeKind::SatelliteUser, NodeKind::Satellite, true) !=
          effective_gain(g, NodeKind::SatelliteUser, NodeKind::Satellite, false));
}

TEST_CASE("gain profile validation") {
    GainProfile g = leoshare::testing::unit_gains();
    CHECK_NOTHROW(g.validate());
    g.bs = {1.0, 2.0};
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = leoshare::testing::unit_gains();
    g.bs_low_side = 2.0;
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = leoshare::testing::unit_gains();
    g.terrestrial_user.side = 0.0;
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    CHECK_NOTHROW(load_preset("vsat").base.gains.validate());
}

TEST_CASE("dB round trip of the preset values") {
    for (double db : {44.5, 31.5, 34.2, 21.2, 50.0, 30.0, 16.0, 4.0, -12.0, 0.0}) {
        CHECK(std::abs(linear_to_db(db_to_linear(db)) - db) <= 1e-12 * std::max(1.0, std::abs(db)));
    }
    CHECK(watts_to_dbm(dbm_to_watts(43.0)) == approx(43.0).epsilon(1e-12));
}

TEST_CASE("side-lobe visibility assumption") {
    NetworkGeometry g = leoshare::testing::earth_geometry();
    CHECK(satellite_in_bs_sidelobes(g));  // 10 deg < acos(sin 57 deg) = 33 deg
    g.psi1_threshold = deg_to_rad(35.0);
    CHECK_FALSE(satellite_in_bs_sidelobes(g));
}
