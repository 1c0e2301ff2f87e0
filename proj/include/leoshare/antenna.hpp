#pragma once

#include <string_view>

#include "leoshare/geometry.hpp"

namespace leoshare {

// Which of the three BS elevation regions a link falls into.
enum class BsLevel { Main, High, Low, NotApplicable };

std::string_view to_string(BsLevel level);

struct LobeGains {
    double main = 1.0;  // linear
    double side = 1.0;  // linear
};

// Sectored gains, all linear. The BS side lobe is split into a high and a
// low level keyed to the elevation towards the satellite.
struct GainProfile {
    LobeGains satellite;
    LobeGains satellite_user;
    LobeGains bs;
    LobeGains terrestrial_user;
    double bs_high_side = 1.0;
    double bs_low_side = 1.0;
    double carrier_hz = 1.0;
    double speed_of_light = 299792458.0;

    // (c / (4 pi f_c))^2
    double free_space_factor() const;
    // Throws std::domain_error naming the offending gain.
    void validate() const;
};

// Effective gain of a link including the free-space factor. Valid pairs are
// (u_s, s), (b, s), (u_t, s), (s, u_s), (b, u_s) and (u_t, u_s). Only the
// satellite/satellite-user pairs may be aligned; for (b, s) the BS level
// selects main, high or low gain; (b, u_s) always uses the high side lobe.
double effective_gain(const GainProfile& profile, NodeKind tx, NodeKind rx, bool aligned,
                      BsLevel level = BsLevel::NotApplicable);

// Region of a BS antenna for elevation psi: [0, psi1] main, (psi1, psi2] high, above low.
BsLevel bs_level_by_elevation(double psi, double psi1, double psi2);

double bs_gain_by_elevation(const GainProfile& profile, double psi, double psi1, double psi2);

// True when psi1 < acos(sin theta_s), i.e. every visible satellite sees BS side lobes only.
bool satellite_in_bs_sidelobes(const NetworkGeometry& geom);

}  // namespace leoshare
