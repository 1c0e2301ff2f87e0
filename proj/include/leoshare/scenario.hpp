#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "leoshare/antenna.hpp"
#include "leoshare/fading.hpp"
#include "leoshare/geometry.hpp"

namespace leoshare {

// Satellite link direction / terrestrial link direction sharing the band.
enum class Sharing { UlDl, UlUl, DlDl, DlUl };

inline constexpr Sharing kAllSharings[] = {Sharing::UlDl, Sharing::UlUl, Sharing::DlDl, Sharing::DlUl};

std::string_view to_string(Sharing s);
Sharing parse_sharing(std::string_view text);
inline bool is_uplink(Sharing s) { return s == Sharing::UlDl || s == Sharing::UlUl; }
// True when the terrestrial interferers are BSs (terrestrial downlink).
inline bool terrestrial_downlink(Sharing s) { return s == Sharing::UlDl || s == Sharing::DlDl; }

enum class TerminalClass { Vsat, Handheld };

std::string_view to_string(TerminalClass t);

// Everything needed to evaluate one sharing configuration. SI units:
// densities per m^2, powers in W, distances in m, angles in rad.
struct ScenarioConfig {
    Sharing sharing = Sharing::UlDl;
    TerminalClass terminal = TerminalClass::Vsat;

    double lambda_s = 0.0;
    double lambda_us = 0.0;
    double lambda_b = 0.0;
    double lambda_ut = 0.0;

    double p_s = 1.0;
    double p_us = 1.0;
    double p_b = 1.0;
    double p_ut = 1.0;

    double alpha_s = 2.0;
    double alpha_t = 4.0;
    double noise_power = 0.0;

    NetworkGeometry geometry;
    GainProfile gains;
    ShadowedRicianParams sr{1, 0.063, 8.97e-4};
    NakagamiParams nakagami{1};

    // Inner exclusion radius of the terrestrial-user disk around the satellite user,
    // used by the mean-interference forms.
    double ut_inner_radius = 7.0;
    // Apply the same exclusion when sampling terrestrial users in Monte Carlo.
    bool mc_ut_exclusion = false;
};

struct Diagnostic {
    enum class Severity { Warning, Error };
    Severity severity = Severity::Error;
    std::string field;
    std::string message;
};

// Checks every invariant of the configuration, including the Earth-grazing
// constraint and the BS side-lobe assumption (a warning only).
std::vector<Diagnostic> validate(const ScenarioConfig& cfg);

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace leoshare
