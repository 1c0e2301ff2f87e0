#pragma once

#include <cmath>
#include <numbers>

namespace leoshare {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Densities in configs are given per square kilometre.
inline double per_km2_to_per_m2(double d) { return d * 1e-6; }
inline double per_m2_to_per_km2(double d) { return d * 1e6; }

// Thermal noise power over a bandwidth from a spectral density in dBm/Hz.
inline double noise_power_watts(double density_dbm_hz, double bandwidth_hz) {
    return dbm_to_watts(density_dbm_hz) * bandwidth_hz;
}

}  // namespace leoshare
