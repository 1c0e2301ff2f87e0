#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "doctest.h"
#include "support/approx.hpp"
#include "leoshare/geometry.hpp"
#include "leoshare/units.hpp"
#include "support/fixtures.hpp"
#include "support/ks.hpp"

using namespace leoshare;
using leoshare::testing::approx;
using leoshare::testing::earth_geometry;

namespace {

// Surface area of a polar cap of half-angle phi on a sphere of radius R by direct integration.
double surface_integral(double radius, double phi) {
    const auto f = [](double t) { return std::sin(t); };
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, phi, 20, 1e-14);
    return 2.0 * kPi * radius * radius * v;
}

// Central angle of the visible cap edge from the satellite off-nadir angle theta (ray hits sphere R_o).
double ul_central_angle(double rs, double ro, double theta) {
    return std::asin(rs * std::sin(theta) / ro) - theta;
}

// Central angle of the visible cap edge for an observer at R_us looking up at elevation eps towards sphere R_o.
double dl_central_angle(double rus, double ro, double eps) {
    return kPi / 2 - eps - std::asin(rus * std::cos(eps) / ro);
}

Vec3 on_sphere(double radius, double central_angle) {
    return {radius * std::sin(central_angle), 0.0, radius * std::cos(central_angle)};
}

}  // namespace

TEST_CASE("uplink cap area matches surface integration") {
    const NetworkGeometry g = earth_geometry();
    for (NodeKind k : {NodeKind::SatelliteUser, NodeKind::BaseStation, NodeKind::TerrestrialUser}) {
        const CapBounds b = cap_bounds_ul(g, k);
        const double ro = g.radius_of(k);
        const double oracle = surface_integral(ro, ul_central_angle(g.satellite_radius, ro, g.visibility_angle));
        CHECK(b.area == approx(oracle).epsilon(1e-9));
        CHECK(b.r_min == approx(g.satellite_radius - ro).epsilon(1e-15));
        // Edge distance from the law of cosines over the oracle central angle.
        const Vec3 edge = on_sphere(ro, ul_central_angle(g.satellite_radius, ro, g.visibility_angle));
        CHECK(b.r_max == approx(distance(edge, {0, 0, g.satellite_radius})).epsilon(1e-12));
    }
}

TEST_CASE("downlink cap area matches surface integration") {
    NetworkGeometry g = earth_geometry();
    for (double eps_deg : {0.0, 10.0, 25.0, 60.0}) {
        g.elevation_angle = deg_to_rad(eps_deg);
        for (NodeKind k : {NodeKind::Satellite, NodeKind::BaseStation}) {
            const CapBounds b = cap_bounds_dl(g, k);
            const double ro = g.radius_of(k);
            const double oracle = surface_integral(ro, dl_central_angle(g.satellite_user_radius, ro, g.elevation_angle));
            CHECK(b.area == approx(oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("cap area is monotone in the visibility and elevation angles") {
    NetworkGeometry g = earth_geometry();
    double prev = 0.0;
    for (double deg = 5.0; deg <= 65.0; deg += 5.0) {
        g.visibility_angle = deg_to_rad(deg);
        const double a = cap_bounds_ul(g, NodeKind::SatelliteUser).area;
        CHECK(a >= prev);
        prev = a;
    }
    g = earth_geometry();
    prev = INFINITY;
    for (double deg = 0.0; deg <= 85.0; deg += 5.0) {
        g.elevation_angle = deg_to_rad(deg);
        const double a = cap_bounds_dl(g, NodeKind::Satellite).area;
        CHECK(a <= prev);
        prev = a;
    }
}

TEST_CASE("Earth-grazing visibility angle is rejected") {
    NetworkGeometry g = earth_geometry();
    g.visibility_angle = deg_to_rad(89.0);
    CHECK_THROWS_AS(cap_bounds_ul(g, NodeKind::SatelliteUser), std::domain_error);
}

TEST_CASE("zero-aperture caps have zero area") {
    NetworkGeometry g = earth_geometry();
    g.visibility_angle = 0.0;
    CHECK(cap_bounds_ul(g, NodeKind::SatelliteUser).area == 0.0);
    g.elevation_angle = kPi / 2;
    CHECK(cap_bounds_dl(g, NodeKind::Satellite).area == 0.0);
}

TEST_CASE("terrestrial-user disk area") {
    NetworkGeometry g;
    g.ut_disk_radius = 0.0;
    CHECK(ut_disk_area(g) == 0.0);
    g.ut_disk_radius = 1.0;
    CHECK(ut_disk_area(g) == approx(kPi));
    g.ut_disk_radius = 500.0;
    CHECK(ut_disk_area(g) == approx(kPi * 2.5e5));
}

TEST_CASE("ring density preserves the expected point count") {
    CHECK(ring_density(3e-6, 7e6, 7e6) == 3e-6);
    CHECK(ring_density(1e-6, 6378e3, 6908e3) == approx(1e-6 * 6378.0 / 6908.0).epsilon(1e-15));
    const NetworkGeometry g = earth_geometry();
    for (NodeKind k : {NodeKind::SatelliteUser, NodeKind::BaseStation, NodeKind::TerrestrialUser}) {
        const CapBounds b = cap_bounds_ul(g, k);
        const double lam = 2.5e-7;
        const double ring = ring_density(lam, g.radius_of(k), g.satellite_radius);
        const double annulus = kPi * (b.r_max * b.r_max - b.r_min * b.r_min);
        CHECK(ring * annulus == approx(lam * b.area).epsilon(1e-12));
    }
    const CapBounds d = cap_bounds_dl(g, NodeKind::Satellite);
    const double ring = ring_density(1e-12, g.satellite_radius, g.satellite_user_radius);
    CHECK(ring * kPi * (d.r_max * d.r_max - d.r_min * d.r_min) == approx(1e-12 * d.area).epsilon(1e-12));
}

TEST_CASE("side-lobe boundary radius") {
    NetworkGeometry g = earth_geometry();
    const CapBounds cap = cap_bounds_ul(g, NodeKind::BaseStation);

    SUBCASE("zenith threshold gives the nearest point") {
        g.psi2_threshold = kPi / 2;
        CHECK(bs_sidelobe_boundary_radius(g) == approx(g.satellite_radius - g.bs_radius).epsilon(1e-12));
    }
    SUBCASE("matches a 3D root-finding oracle") {
        // Elevation of the satellite above the horizon of a BS at central angle phi.
        const auto elev = [&](double phi) {
            return elevation_from(on_sphere(g.bs_radius, phi), {0, 0, g.satellite_radius}) - g.psi2_threshold;
        };
        const double phi_max = ul_central_angle(g.satellite_radius, g.bs_radius, g.visibility_angle);
        boost::uintmax_t iters = 200;
        const auto [lo, hi] =
            boost::math::tools::toms748_solve(elev, 0.0, phi_max, boost::math::tools::eps_tolerance<double>(50), iters);
        const double phi = 0.5 * (lo + hi);
        const double oracle = distance(on_sphere(g.bs_radius, phi), {0, 0, g.satellite_radius});
        const double r = bs_sidelobe_boundary_radius(g);
        CHECK(r > cap.r_min);
        CHECK(r < cap.r_max);
        CHECK(r == approx(oracle).epsilon(1e-10));
    }
    SUBCASE("threshold just above the horizon elevation approaches r_max") {
        const double horizon = elevation_at_distance(g.bs_radius, g.satellite_radius, cap.r_max);
        g.psi2_threshold = horizon + 1e-9;
        CHECK(bs_sidelobe_boundary_radius(g) == approx(cap.r_max).epsilon(1e-6));
        g.psi2_threshold = horizon - 1e-3;
        CHECK_THROWS_AS(bs_sidelobe_boundary_radius(g), std::domain_error);
    }
    SUBCASE("elevation and distance are inverse") {
        for (double deg : {1.0, 10.0, 40.0, 80.0}) {
            const double d = distance_at_elevation(g.bs_radius, g.satellite_radius, deg_to_rad(deg));
            CHECK(rad_to_deg(elevation_at_distance(g.bs_radius, g.satellite_radius, d)) == approx(deg));
        }
    }
}

TEST_CASE("cap sampling") {
    const NetworkGeometry g = earth_geometry();
    const CapBounds b = cap_bounds_ul(g, NodeKind::SatelliteUser);
    const SphericalCap cap(g.satellite_user_radius, g.satellite_radius, b);
    CHECK(cap.area() == approx(b.area).epsilon(1e-9));

    SUBCASE("zero density is always empty") {
        RngStream rng(7);
        for (int i = 0; i < 100; ++i) CHECK(sample_cap_points(cap, 0.0, rng).empty());
    }

    SUBCASE("Poisson count mean, distance range and distance law") {
        const double density = 4.0 / b.area;  // four points on average
        RngStream rng(11);
        const int draws = 100000;
        double sum = 0.0;
        double sum_sq = 0.0;
        std::vector<double> dist;
        bool in_range = true;
        for (int i = 0; i < draws; ++i) {
            const auto pts = sample_cap_points(cap, density, rng);
            sum += pts.size();
            sum_sq += double(pts.size()) * pts.size();
            for (const auto& p : pts) {
                const double d = distance(p, cap.observer());
                in_range = in_range && d >= b.r_min * (1 - 1e-12) && d <= b.r_max * (1 + 1e-12);
                if (dist.size() < 100000) dist.push_back(d);
            }
        }
        CHECK(in_range);
        const double mean = sum / draws;
        const double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
        CHECK(std::abs(mean - 4.0) < 3.0 * se);

        // Every point of a homogeneous cap process has r^2 uniform between the bounds.
        const auto cdf = [&](double r) {
            return std::clamp((r * r - b.r_min * b.r_min) / (b.r_max * b.r_max - b.r_min * b.r_min), 0.0, 1.0);
        };
        CHECK(leoshare::testing::ks_test(dist, cdf).p_value > 0.01);
    }

    SUBCASE("ring and cap counts agree") {
        const double lam = 3.0 / b.area;
        const double ring = ring_density(lam, g.satellite_user_radius, g.satellite_radius);
        RngStream a(21);
        RngStream c(22);
        double n_cap = 0.0;
        double n_ring = 0.0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            n_cap += sample_cap_points(cap, lam, a).size();
            n_ring += sample_ring_distances(b, ring, c).size();
        }
        CHECK(n_ring / n_cap == approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("disk sampling respects the inner exclusion") {
    RngStream rng(5);
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
        for (double d : sample_disk_distances(7.0, 500.0, 1e-3, rng)) ok = ok && d >= 7.0 && d <= 500.0;
    }
    CHECK(ok);
}
