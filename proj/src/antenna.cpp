#include "leoshare/antenna.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "leoshare/units.hpp"

namespace leoshare {

std::string_view to_string(BsLevel level) {
    switch (level) {
        case BsLevel::Main: return "main";
        case BsLevel::High: return "high";
        case BsLevel::Low: return "low";
        case BsLevel::NotApplicable: return "n/a";
    }
    return "unknown";
}

double GainProfile::free_space_factor() const {
    const double k = speed_of_light / (4.0 * kPi * carrier_hz);
    return k * k;
}

namespace {

void check_lobes(const LobeGains& g, const char* name) {
    if (!(g.side > 0.0)) throw std::domain_error(std::string(name) + " side-lobe gain must be positive");
    if (!(g.main >= g.side)) {
        throw std::domain_error(std::string(name) + " main-lobe gain must not be below its side lobe");
    }
}

}  // namespace

void GainProfile::validate() const {
    check_lobes(satellite, "satellite");
    check_lobes(satellite_user, "satellite user");
    check_lobes(bs, "BS");
    check_lobes(terrestrial_user, "terrestrial user");
    if (!(bs_low_side > 0.0)) throw std::domain_error("BS low side-lobe gain must be positive");
    if (!(bs_high_side >= bs_low_side)) throw std::domain_error("BS high side lobe must not be below the low one");
    if (!(carrier_hz > 0.0)) throw std::domain_error("carrier frequency must be positive");
    if (!(speed_of_light > 0.0)) throw std::domain_error("speed of light must be positive");
}

double effective_gain(const GainProfile& p, NodeKind tx, NodeKind rx, bool aligned, BsLevel level) {
    const double fs = p.free_space_factor();
    const auto invalid = [&]() {
        return std::invalid_argument("no gain model for link " + std::string(to_string(tx)) + " -> " +
                                     std::string(to_string(rx)));
    };
    const bool sat_pair = (tx == NodeKind::SatelliteUser && rx == NodeKind::Satellite) ||
                          (tx == NodeKind::Satellite && rx == NodeKind::SatelliteUser);
    if (aligned && !sat_pair) throw std::invalid_argument("only satellite links can be beam-aligned");

    if (sat_pair) {
        if (aligned) return p.satellite.main * p.satellite_user.main * fs;
        return p.satellite.side * p.satellite_user.side * fs;
    }
    if (rx == NodeKind::Satellite) {
        if (tx == NodeKind::TerrestrialUser) return p.satellite.side * p.terrestrial_user.side * fs;
        if (tx == NodeKind::BaseStation) {
            switch (level) {
                case BsLevel::Main: return p.satellite.side * p.bs.main * fs;
                case BsLevel::High: return p.satellite.side * p.bs_high_side * fs;
                case BsLevel::Low: return p.satellite.side * p.bs_low_side * fs;
                case BsLevel::NotApplicable:
                    throw std::invalid_argument("BS to satellite link needs a BS level");
            }
        }
        throw invalid();
    }
    if (rx == NodeKind::SatelliteUser) {
        if (tx == NodeKind::TerrestrialUser) return p.satellite_user.side * p.terrestrial_user.side * fs;
        if (tx == NodeKind::BaseStation) return p.satellite_user.side * p.bs_high_side * fs;
    }
    throw invalid();
}

BsLevel bs_level_by_elevation(double psi, double psi1, double psi2) {
    if (psi <= psi1) return BsLevel::Main;
    if (psi <= psi2) return BsLevel::High;
    return BsLevel::Low;
}

double bs_gain_by_elevation(const GainProfile& p, double psi, double psi1, double psi2) {
    switch (bs_level_by_elevation(psi, psi1, psi2)) {
        case BsLevel::Main: return p.bs.main;
        case BsLevel::High: return p.bs_high_side;
        default: return p.bs_low_side;
    }
}

bool satellite_in_bs_sidelobes(const NetworkGeometry& geom) {
    return geom.psi1_threshold < std::acos(std::sin(geom.visibility_angle));
}

}  // namespace leoshare
