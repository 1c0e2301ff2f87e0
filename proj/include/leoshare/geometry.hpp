#pragma once

#include <string_view>
#include <vector>

#include "leoshare/rng.hpp"

namespace leoshare {

enum class NodeKind { Satellite, SatelliteUser, BaseStation, TerrestrialUser };

std::string_view to_string(NodeKind kind);

// Concentric-sphere layout. Radii in metres, angles in radians.
struct NetworkGeometry {
    double satellite_radius = 0.0;         // R_s
    double satellite_user_radius = 0.0;    // R_us
    double bs_radius = 0.0;                // R_b
    double terrestrial_user_radius = 0.0;  // R_ut
    double visibility_angle = 0.0;         // off-nadir half-angle seen from the satellite
    double elevation_angle = 0.0;          // minimum elevation seen from the satellite user
    double psi1_threshold = 0.0;           // BS main-lobe / high side-lobe boundary
    double psi2_threshold = 0.0;           // BS high / low side-lobe boundary
    double ut_disk_radius = 0.0;           // terrestrial users visible to the satellite user

    double radius_of(NodeKind kind) const;
};

// Distance range and surface area of a visible spherical cap.
struct CapBounds {
    double r_min = 0.0;
    double r_max = 0.0;
    double area = 0.0;
};

// Cap of nodes of kind `target` visible from the typical satellite.
// Throws std::domain_error when the cap edge grazes below the target sphere.
CapBounds cap_bounds_ul(const NetworkGeometry& geom, NodeKind target);

// Cap of nodes of kind `target` (satellite or BS) visible from the typical satellite user.
CapBounds cap_bounds_dl(const NetworkGeometry& geom, NodeKind target);

double ut_disk_area(const NetworkGeometry& geom);

// Density of the planar annulus that is statistically equivalent to a cap of
// nodes on a sphere of radius `node_radius` observed from `observer_radius`.
double ring_density(double density, double node_radius, double observer_radius);

// Distance from the typical satellite at which the BS elevation equals psi2.
double bs_sidelobe_boundary_radius(const NetworkGeometry& geom);

// Distance at which a node on `node_radius` sees an observer on the larger
// sphere `observer_radius` at elevation psi. Inverse of elevation_at_distance.
double distance_at_elevation(double node_radius, double observer_radius, double psi);

// Elevation angle at which a node on `node_radius` sees an observer on
// `observer_radius` at straight-line distance d (law of cosines).
double elevation_at_distance(double node_radius, double observer_radius, double d);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

// Elevation of `target` above the local horizon of a node at `node` (sphere centred at origin).
double elevation_from(const Vec3& node, const Vec3& target);

// Cap on the sphere of radius node_radius around the +z axis, observed from
// (0, 0, observer_radius), containing every point within r_max of the observer.
class SphericalCap {
public:
    SphericalCap(double node_radius, double observer_radius, const CapBounds& bounds);

    double node_radius() const { return node_radius_; }
    Vec3 observer() const { return {0.0, 0.0, observer_radius_}; }
    const CapBounds& bounds() const { return bounds_; }
    // Surface area from the polar aperture; equals the closed form of the bounds.
    double area() const;

    // Uniform point: the axial coordinate is uniform over the cap (Archimedes), azimuth uniform.
    Vec3 sample_point(RngStream& rng) const;

private:
    double node_radius_;
    double observer_radius_;
    CapBounds bounds_;
    double one_minus_cos_max_;
};

// Homogeneous PPP restricted to the cap: Poisson(density * area) uniform points.
std::vector<Vec3> sample_cap_points(const SphericalCap& cap, double density, RngStream& rng);

// Equivalent-annulus sampling: Poisson(ring_density * pi (r_max^2 - r_min^2))
// distances with r^2 uniform on [r_min^2, r_max^2].
std::vector<double> sample_ring_distances(const CapBounds& bounds, double ring_density,
                                          RngStream& rng);

// Planar PPP on the disk inner <= r <= outer; returns distances to the centre.
std::vector<double> sample_disk_distances(double inner, double outer, double density,
                                          RngStream& rng);

}  // namespace leoshare
