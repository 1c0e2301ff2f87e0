#pragma once

#include <cmath>

#include "leoshare/config.hpp"
#include "leoshare/units.hpp"

namespace leoshare::testing {

inline ScenarioConfig preset_scenario(const char* name, Sharing sharing, double log10_ratio) {
    return make_scenario(load_preset(name), sharing, std::pow(10.0, log10_ratio));
}

// Unit gains and a carrier for which c / (4 pi f_c) = 1, so every effective gain is 1.
inline GainProfile unit_gains() {
    GainProfile g;
    g.carrier_hz = kSpeedOfLight / (4.0 * kPi);
    g.speed_of_light = kSpeedOfLight;
    return g;
}

// Earth-scale geometry matching the presets: 530 km shell, 57 deg visibility, 500 m disk.
inline NetworkGeometry earth_geometry() {
    NetworkGeometry g;
    g.satellite_radius = 6378e3 + 530e3;
    g.satellite_user_radius = 6378e3 + 1.5;
    g.bs_radius = 6378e3 + 35.0;
    g.terrestrial_user_radius = 6378e3 + 1.5;
    g.visibility_angle = deg_to_rad(57.0);
    g.elevation_angle = 0.0;
    g.psi1_threshold = deg_to_rad(10.0);
    g.psi2_threshold = deg_to_rad(40.0);
    g.ut_disk_radius = 500.0;
    return g;
}

}  // namespace leoshare::testing
