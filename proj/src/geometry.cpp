#include "leoshare/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "leoshare/units.hpp"

namespace leoshare {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Satellite: return "satellite";
        case NodeKind::SatelliteUser: return "satellite_user";
        case NodeKind::BaseStation: return "bs";
        case NodeKind::TerrestrialUser: return "terrestrial_user";
    }
    return "unknown";
}

double NetworkGeometry::radius_of(NodeKind kind) const {
    switch (kind) {
        case NodeKind::Satellite: return satellite_radius;
        case NodeKind::SatelliteUser: return satellite_user_radius;
        case NodeKind::BaseStation: return bs_radius;
        case NodeKind::TerrestrialUser: return terrestrial_user_radius;
    }
    throw std::invalid_argument("unknown node kind");
}

CapBounds cap_bounds_ul(const NetworkGeometry& geom, NodeKind target) {
    if (target == NodeKind::Satellite) {
        throw std::invalid_argument("uplink caps are defined for ground nodes only");
    }
    const double rs = geom.satellite_radius;
    const double ro = geom.radius_of(target);
    if (!(ro > 0.0 && rs > ro)) {
        throw std::domain_error("uplink cap needs 0 < R_o < R_s for " + std::string(to_string(target)));
    }
    const double sin_t = std::sin(geom.visibility_angle);
    const double cos_t = std::cos(geom.visibility_angle);
    const double grazing = (ro - rs * sin_t) * (ro + rs * sin_t);
    if (grazing < 0.0) {
        throw std::domain_error("visibility angle grazes below the " + std::string(to_string(target)) +
                                " sphere (R_o^2 < R_s^2 sin^2 theta_s)");
    }
    CapBounds out;
    out.r_min = rs - ro;
    // Rationalised form of R_s cos(theta) - sqrt(R_o^2 - R_s^2 sin^2(theta)).
    out.r_max = (rs - ro) * (rs + ro) / (rs * cos_t + std::sqrt(grazing));
    // R_o - sqrt(R_o^2 - x^2) with x the horizontal offset of the cap edge.
    const double x = out.r_max * sin_t;
    out.area = 2.0 * kPi * ro * (x * x / (ro + std::sqrt((ro - x) * (ro + x))));
    if (geom.visibility_angle == 0.0) {
        out.r_max = out.r_min;
        out.area = 0.0;
    }
    return out;
}

CapBounds cap_bounds_dl(const NetworkGeometry& geom, NodeKind target) {
    if (target != NodeKind::Satellite && target != NodeKind::BaseStation) {
        throw std::invalid_argument("downlink caps are defined for satellites and BSs only");
    }
    const double rus = geom.satellite_user_radius;
    const double ro = geom.radius_of(target);
    if (!(ro > rus)) {
        throw std::domain_error("downlink cap needs R_o > R_us for " + std::string(to_string(target)));
    }
    const double h = rus * std::sin(geom.elevation_angle);
    const double gap = (ro - rus) * (ro + rus);
    CapBounds out;
    out.r_min = ro - rus;
    out.r_max = gap / (std::sqrt(gap + h * h) + h);
    out.area = 2.0 * kPi * ro * (ro - rus - out.r_max * std::sin(geom.elevation_angle));
    if (out.r_max <= out.r_min || geom.elevation_angle >= kPi / 2 - 1e-12) {
        out.r_max = out.r_min;
        out.area = 0.0;
    }
    out.area = std::max(out.area, 0.0);
    return out;
}

double ut_disk_area(const NetworkGeometry& geom) {
    return kPi * geom.ut_disk_radius * geom.ut_disk_radius;
}

double ring_density(double density, double node_radius, double observer_radius) {
    return density * node_radius / observer_radius;
}

double bs_sidelobe_boundary_radius(const NetworkGeometry& geom) {
    const double rs = geom.satellite_radius;
    const double rb = geom.bs_radius;
    const double psi = geom.psi2_threshold;
    if (!(psi > 0.0 && psi <= kPi / 2)) {
        throw std::domain_error("psi2 threshold must lie in (0, pi/2]");
    }
    const double radius = distance_at_elevation(rb, rs, psi);
    const CapBounds cap = cap_bounds_ul(geom, NodeKind::BaseStation);
    // Relative slack for round-off at the zenith and horizon ends.
    const double slack = 1e-12 * cap.r_max;
    if (radius < cap.r_min - slack || radius > cap.r_max + slack) {
        throw std::domain_error("psi2 threshold boundary lies outside the visible BS cap");
    }
    return std::clamp(radius, cap.r_min, cap.r_max);
}

double distance_at_elevation(double node_radius, double observer_radius, double psi) {
    const double rc = node_radius * std::cos(psi);
    return std::sqrt((observer_radius - rc) * (observer_radius + rc)) - node_radius * std::sin(psi);
}

double elevation_at_distance(double node_radius, double observer_radius, double d) {
    const double num = (observer_radius - node_radius) * (observer_radius + node_radius) - d * d;
    return std::asin(std::clamp(num / (2.0 * node_radius * d), -1.0, 1.0));
}

double distance(const Vec3& a, const Vec3& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double elevation_from(const Vec3& node, const Vec3& target) {
    const Vec3 d{target.x - node.x, target.y - node.y, target.z - node.z};
    const double norm_node = std::hypot(node.x, node.y, node.z);
    const double norm_d = std::hypot(d.x, d.y, d.z);
    const double s = (node.x * d.x + node.y * d.y + node.z * d.z) / (norm_node * norm_d);
    return std::asin(std::clamp(s, -1.0, 1.0));
}

SphericalCap::SphericalCap(double node_radius, double observer_radius, const CapBounds& bounds)
    : node_radius_(node_radius), observer_radius_(observer_radius), bounds_(bounds) {
    const double dr = observer_radius - node_radius;
    one_minus_cos_max_ =
        std::max(0.0, (bounds.r_max - dr) * (bounds.r_max + dr) / (2.0 * observer_radius * node_radius));
}

double SphericalCap::area() const {
    return 2.0 * kPi * node_radius_ * node_radius_ * one_minus_cos_max_;
}

Vec3 SphericalCap::sample_point(RngStream& rng) const {
    const double w = one_minus_cos_max_ * rng.uniform();
    const double az = 2.0 * kPi * rng.uniform();
    const double rho = node_radius_ * std::sqrt(w * (2.0 - w));
    return {rho * std::cos(az), rho * std::sin(az), node_radius_ * (1.0 - w)};
}

std::vector<Vec3> sample_cap_points(const SphericalCap& cap, double density, RngStream& rng) {
    std::vector<Vec3> pts;
    const double mean = density * cap.area();
    if (!(mean > 0.0)) return pts;
    std::poisson_distribution<long long> count(mean);
    const long long n = count(rng);
    pts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) pts.push_back(cap.sample_point(rng));
    return pts;
}

std::vector<double> sample_ring_distances(const CapBounds& bounds, double ring_density,
                                          RngStream& rng) {
    return sample_disk_distances(bounds.r_min, bounds.r_max, ring_density, rng);
}

std::vector<double> sample_disk_distances(double inner, double outer, double density,
                                          RngStream& rng) {
    std::vector<double> out;
    const double span = (outer - inner) * (outer + inner);
    const double mean = density * kPi * span;
    if (!(mean > 0.0)) return out;
    std::poisson_distribution<long long> count(mean);
    const long long n = count(rng);
    out.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) out.push_back(std::sqrt(inner * inner + span * rng.uniform()));
    return out;
}

}  // namespace leoshare
