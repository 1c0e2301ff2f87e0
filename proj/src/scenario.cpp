#include "leoshare/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "leoshare/units.hpp"

namespace leoshare {

std::string_view to_string(Sharing s) {
    switch (s) {
        case Sharing::UlDl: return "ul-dl";
        case Sharing::UlUl: return "ul-ul";
        case Sharing::DlDl: return "dl-dl";
        case Sharing::DlUl: return "dl-ul";
    }
    return "unknown";
}

Sharing parse_sharing(std::string_view text) {
    for (Sharing s : kAllSharings) {
        if (text == to_string(s)) return s;
    }
    throw std::invalid_argument("unknown sharing configuration '" + std::string(text) +
                                "' (expected ul-dl, ul-ul, dl-dl or dl-ul)");
}

std::string_view to_string(TerminalClass t) {
    return t == TerminalClass::Vsat ? "vsat" : "handheld";
}

namespace {

class Collector {
public:
    void error(std::string field, std::string msg) {
        out.push_back({Diagnostic::Severity::Error, std::move(field), std::move(msg)});
    }
    void warning(std::string field, std::string msg) {
        out.push_back({Diagnostic::Severity::Warning, std::move(field), std::move(msg)});
    }
    void require(bool ok, std::string field, std::string msg) {
        if (!ok) error(std::move(field), std::move(msg));
    }

    std::vector<Diagnostic> out;
};

}  // namespace

std::vector<Diagnostic> validate(const ScenarioConfig& cfg) {
    Collector c;
    const NetworkGeometry& g = cfg.geometry;

    c.require(cfg.lambda_s >= 0.0, "densities.satellite", "density must be non-negative");
    c.require(cfg.lambda_us >= 0.0, "densities.satellite_user", "density must be non-negative");
    c.require(cfg.lambda_b >= 0.0, "densities.bs", "density must be non-negative");
    c.require(cfg.lambda_ut >= 0.0, "densities.terrestrial_user", "density must be non-negative");

    c.require(cfg.p_s > 0.0, "satellite.power_dbm", "transmit power must be positive");
    c.require(cfg.p_us > 0.0, "satellite.user_power_dbm", "transmit power must be positive");
    c.require(cfg.p_b > 0.0, "terrestrial.bs_power_dbm", "transmit power must be positive");
    c.require(cfg.p_ut > 0.0, "terrestrial.user_power_dbm", "transmit power must be positive");

    c.require(cfg.alpha_s >= 2.0, "satellite.path_loss_exponent", "path-loss exponent must be at least 2");
    c.require(cfg.alpha_t >= 2.0, "terrestrial.path_loss_exponent", "path-loss exponent must be at least 2");
    c.require(cfg.noise_power >= 0.0, "satellite.noise_density_dbm_hz", "noise power must be non-negative");

    const bool radii_ok = g.satellite_radius > 0.0 && g.satellite_user_radius > 0.0 && g.bs_radius > 0.0 &&
                          g.terrestrial_user_radius > 0.0;
    c.require(radii_ok, "geometry", "all sphere radii must be positive");
    c.require(g.satellite_radius > g.bs_radius && g.bs_radius >= g.terrestrial_user_radius,
              "geometry", "radii must satisfy R_s > R_b >= R_ut");
    c.require(g.satellite_radius > g.satellite_user_radius, "geometry", "radii must satisfy R_s > R_us");
    c.require(g.visibility_angle >= 0.0 && g.visibility_angle < kPi / 2, "satellite.visibility_angle_deg",
              "visibility angle must lie in [0, 90) degrees");
    c.require(g.elevation_angle >= 0.0 && g.elevation_angle < kPi / 2, "satellite.elevation_angle_deg",
              "elevation angle must lie in [0, 90) degrees");
    c.require(g.psi1_threshold >= 0.0 && g.psi1_threshold < g.psi2_threshold && g.psi2_threshold <= kPi / 2,
              "terrestrial.psi1_deg", "BS thresholds must satisfy 0 <= psi1 < psi2 <= 90 degrees");
    c.require(g.ut_disk_radius > 0.0, "terrestrial.ut_disk_radius_m", "terrestrial-user disk radius must be positive");
    c.require(cfg.ut_inner_radius >= 0.0 && cfg.ut_inner_radius < g.ut_disk_radius, "terrestrial.ut_inner_radius_m",
              "inner exclusion radius must lie in [0, disk radius)");

    if (radii_ok && g.satellite_radius > g.bs_radius && g.satellite_radius > g.satellite_user_radius) {
        const NodeKind ground[] = {NodeKind::SatelliteUser, NodeKind::BaseStation, NodeKind::TerrestrialUser};
        for (NodeKind k : ground) {
            try {
                cap_bounds_ul(g, k);
            } catch (const std::domain_error& e) {
                c.error("satellite.visibility_angle_deg", e.what());
            }
        }
        if (g.bs_radius > g.satellite_user_radius) {
            try {
                cap_bounds_dl(g, NodeKind::BaseStation);
            } catch (const std::domain_error& e) {
                c.error("geometry", e.what());
            }
        } else {
            c.error("geometry", "BS sphere must lie above the satellite-user sphere");
        }
        try {
            bs_sidelobe_boundary_radius(g);
        } catch (const std::domain_error& e) {
            c.error("terrestrial.psi2_deg", e.what());
        }
    }
    if (!satellite_in_bs_sidelobes(g)) {
        c.warning("terrestrial.psi1_deg",
                  "psi1 >= acos(sin theta_s): some visible satellites fall in the BS main lobe");
    }

    try {
        cfg.gains.validate();
    } catch (const std::domain_error& e) {
        c.error("gains", e.what());
    }
    c.require(cfg.nakagami.m >= 1, "fading.nakagami_m", "Nakagami m must be a positive integer");
    if (std::abs(cfg.sr.normalization() - 1.0) > 1e-10) {
        c.error("fading", "Shadowed-Rician series weights do not sum to one");
    }
    return c.out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

}  // namespace leoshare
