#pragma once

#include <string>
#include <vector>

#include "leoshare/quadrature.hpp"
#include "leoshare/scenario.hpp"

namespace leoshare {

// 1 - exp(-lambda pi (r_max^2 - r_min^2)): probability that the cap holds a node.
double nonempty_probability(double lambda_ring, const CapBounds& bounds);

// Distance PDF of the nearest node given at least one node, on [r_min, r_max].
// Throws std::domain_error outside that range.
double nearest_distance_pdf(double lambda_ring, const CapBounds& bounds, double r);

double nearest_distance_cdf(double lambda_ring, const CapBounds& bounds, double r);

// Inverse CDF of the conditioned nearest distance, u in [0, 1].
double nearest_distance_quantile(double lambda_ring, const CapBounds& bounds, double u);

// One homogeneous group of interferers seen by the typical receiver.
struct InterfererTier {
    enum class Fading { ShadowedRician, Nakagami };

    std::string name;
    NodeKind kind = NodeKind::SatelliteUser;
    BsLevel level = BsLevel::NotApplicable;
    Fading fading = Fading::ShadowedRician;
    double density = 0.0;  // planar (ring) density, per m^2
    double inner = 0.0;    // ignored when starts_at_serving
    double outer = 0.0;
    double mean_inner = 0.0;  // inner radius used by the mean-interference forms
    bool starts_at_serving = false;
    double gain = 0.0;
    double power = 0.0;
    double alpha = 2.0;
};

struct MeanInterference {
    double satellite_tier = 0.0;    // same-system interferers, averaged over the serving distance
    double terrestrial_tier = 0.0;  // BSs or terrestrial users
};

enum class LinkFamily { Uplink, Downlink };

// Stochastic-geometry evaluation of one ScenarioConfig. Immutable after
// construction; all members are safe to call concurrently.
class ScenarioModel {
public:
    explicit ScenarioModel(ScenarioConfig cfg, QuadratureConfig quad = {});

    const ScenarioConfig& config() const { return cfg_; }
    const QuadratureConfig& quadrature() const { return quad_; }
    const CapBounds& serving_bounds() const { return serving_bounds_; }
    double serving_density() const { return serving_density_; }
    double serving_gain() const { return serving_gain_; }
    double serving_power() const { return serving_power_; }
    const std::vector<InterfererTier>& tiers() const { return tiers_; }

    double nonempty_probability() const;
    double nearest_distance_pdf(double r) const;
    double nearest_distance_quantile(double u) const;

    // Exponent g(s) of L(s) = exp(g(s)) and its s-derivatives.
    double laplace_exponent(double r, double s, int k = 0) const;
    double laplace(double r, double s) const;
    // d^v L / ds^v from the Bell-polynomial recurrence on the exponent derivatives.
    double laplace_derivative(double r, double s, int v) const;

    // Laplace argument used by the coverage series at distance r and threshold gamma.
    double coverage_argument(double r, double gamma) const;
    // P[SINR >= gamma | serving distance r].
    double conditional_coverage(double r, double gamma) const;
    // Unconditional P[SINR >= gamma], including the nonempty-cap factor.
    double coverage_probability(double gamma) const;
    double ergodic_se() const;

    MeanInterference mean_interference() const;
    double se_lower_bound() const;

private:
    double tier_integral(const InterfererTier& t, double r, double s, int k) const;
    double tier_mean(const InterfererTier& t, double inner) const;
    double mean_fading_power(const InterfererTier& t) const;
    template <class F>
    double expect_over_distance(F&& f, const char* name, double abs_floor = 0.0) const;

    ScenarioConfig cfg_;
    QuadratureConfig quad_;
    CapBounds serving_bounds_;
    double serving_density_ = 0.0;
    double serving_gain_ = 0.0;
    double serving_power_ = 0.0;
    std::vector<InterfererTier> tiers_;
};

double laplace_interference(const ScenarioConfig& cfg, double r, double s);
double laplace_derivative(const ScenarioConfig& cfg, double r, double s, int v);
double coverage_probability(const ScenarioConfig& cfg, double gamma);
double ergodic_se(const ScenarioConfig& cfg, const QuadratureConfig& quad = {});
MeanInterference mean_interference(const ScenarioConfig& cfg);
double se_lower_bound(const ScenarioConfig& cfg);

// Terrestrial density ratio lambda_ut / lambda_b below which the sharing mode
// with terrestrial uplink has the better lower bound. The uplink form needs
// alpha_s = 2; the downlink form needs alpha_s = 2 and alpha_t = 4.
double density_ratio_threshold(const ScenarioConfig& cfg, LinkFamily family);

}  // namespace leoshare
