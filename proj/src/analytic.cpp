#include "leoshare/analytic.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "leoshare/units.hpp"

namespace leoshare {

double nonempty_probability(double lambda_ring, const CapBounds& b) {
    const double mean = lambda_ring * kPi * (b.r_max - b.r_min) * (b.r_max + b.r_min);
    if (!(mean > 0.0)) return 0.0;
    return -std::expm1(-mean);
}

double nearest_distance_pdf(double lambda_ring, const CapBounds& b, double r) {
    if (r < b.r_min || r > b.r_max) throw std::domain_error("distance outside the cap range");
    const double span = (b.r_max - b.r_min) * (b.r_max + b.r_min);
    if (!(span > 0.0)) throw std::domain_error("nearest-distance PDF of a degenerate cap");
    const double pne = nonempty_probability(lambda_ring, b);
    // Vanishing density: the single node is uniform over the annulus.
    if (pne == 0.0) return 2.0 * r / span;
    const double excess = (r - b.r_min) * (r + b.r_min);
    return 2.0 * kPi * lambda_ring * r * std::exp(-lambda_ring * kPi * excess) / pne;
}

double nearest_distance_cdf(double lambda_ring, const CapBounds& b, double r) {
    if (r <= b.r_min) return 0.0;
    if (r >= b.r_max) return 1.0;
    const double excess = (r - b.r_min) * (r + b.r_min);
    const double pne = nonempty_probability(lambda_ring, b);
    if (pne == 0.0) return excess / ((b.r_max - b.r_min) * (b.r_max + b.r_min));
    return -std::expm1(-lambda_ring * kPi * excess) / pne;
}

double nearest_distance_quantile(double lambda_ring, const CapBounds& b, double u) {
    if (u < 0.0 || u > 1.0) throw std::domain_error("quantile level must lie in [0, 1]");
    const double span = (b.r_max - b.r_min) * (b.r_max + b.r_min);
    const double pne = nonempty_probability(lambda_ring, b);
    double excess;
    if (pne == 0.0) {
        excess = u * span;
    } else {
        excess = -std::log1p(-u * pne) / (lambda_ring * kPi);
    }
    return std::clamp(std::sqrt(b.r_min * b.r_min + excess), b.r_min, b.r_max);
}

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

ScenarioModel::ScenarioModel(ScenarioConfig cfg, QuadratureConfig quad) : cfg_(std::move(cfg)), quad_(quad) {
    quad_.validate();
    const NetworkGeometry& g = cfg_.geometry;
    const GainProfile& gp = cfg_.gains;
    using Fading = InterfererTier::Fading;

    if (is_uplink(cfg_.sharing)) {
        const double rs = g.satellite_radius;
        serving_bounds_ = cap_bounds_ul(g, NodeKind::SatelliteUser);
        serving_density_ = ring_density(cfg_.lambda_us, g.satellite_user_radius, rs);
        serving_gain_ = effective_gain(gp, NodeKind::SatelliteUser, NodeKind::Satellite, true);
        serving_power_ = cfg_.p_us;

        InterfererTier users;
        users.name = "satellite-user interference";
        users.kind = NodeKind::SatelliteUser;
        users.density = serving_density_;
        users.starts_at_serving = true;
        users.outer = serving_bounds_.r_max;
        users.gain = effective_gain(gp, NodeKind::SatelliteUser, NodeKind::Satellite, false);
        users.power = cfg_.p_us;
        users.alpha = cfg_.alpha_s;
        tiers_.push_back(users);

        if (cfg_.sharing == Sharing::UlDl) {
            const CapBounds cap = cap_bounds_ul(g, NodeKind::BaseStation);
            const double density = ring_density(cfg_.lambda_b, g.bs_radius, rs);
            // Elevation falls with distance: low side lobe nearest, then high, then main.
            const double d2 = bs_sidelobe_boundary_radius(g);
            const double d1 = std::clamp(distance_at_elevation(g.bs_radius, rs, g.psi1_threshold), d2, cap.r_max);
            const struct {
                BsLevel level;
                double lo, hi;
                const char* name;
            } segments[] = {{BsLevel::Low, cap.r_min, d2, "BS low side-lobe interference"},
                            {BsLevel::High, d2, d1, "BS high side-lobe interference"},
                            {BsLevel::Main, d1, cap.r_max, "BS main-lobe interference"}};
            for (const auto& seg : segments) {
                if (!(seg.hi > seg.lo)) continue;
                InterfererTier t;
                t.name = seg.name;
                t.kind = NodeKind::BaseStation;
                t.level = seg.level;
                t.density = density;
                t.inner = t.mean_inner = seg.lo;
                t.outer = seg.hi;
                t.gain = effective_gain(gp, NodeKind::BaseStation, NodeKind::Satellite, false, seg.level);
                t.power = cfg_.p_b;
                t.alpha = cfg_.alpha_s;
                tiers_.push_back(t);
            }
        } else {
            const CapBounds cap = cap_bounds_ul(g, NodeKind::TerrestrialUser);
            InterfererTier t;
            t.name = "terrestrial-user interference";
            t.kind = NodeKind::TerrestrialUser;
            t.density = ring_density(cfg_.lambda_ut, g.terrestrial_user_radius, rs);
            t.inner = t.mean_inner = cap.r_min;
            t.outer = cap.r_max;
            t.gain = effective_gain(gp, NodeKind::TerrestrialUser, NodeKind::Satellite, false);
            t.power = cfg_.p_ut;
            t.alpha = cfg_.alpha_s;
            tiers_.push_back(t);
        }
    } else {
        const double rus = g.satellite_user_radius;
        serving_bounds_ = cap_bounds_dl(g, NodeKind::Satellite);
        serving_density_ = ring_density(cfg_.lambda_s, g.satellite_radius, rus);
        serving_gain_ = effective_gain(gp, NodeKind::Satellite, NodeKind::SatelliteUser, true);
        serving_power_ = cfg_.p_s;

        InterfererTier sats;
        sats.name = "satellite interference";
        sats.kind = NodeKind::Satellite;
        sats.density = serving_density_;
        sats.starts_at_serving = true;
        sats.outer = serving_bounds_.r_max;
        sats.gain = effective_gain(gp, NodeKind::Satellite, NodeKind::SatelliteUser, false);
        sats.power = cfg_.p_s;
        sats.alpha = cfg_.alpha_s;
        tiers_.push_back(sats);

        InterfererTier t;
        t.fading = Fading::Nakagami;
        t.power = cfg_.sharing == Sharing::DlDl ? cfg_.p_b : cfg_.p_ut;
        t.alpha = cfg_.alpha_t;
        if (cfg_.sharing == Sharing::DlDl) {
            const CapBounds cap = cap_bounds_dl(g, NodeKind::BaseStation);
            t.name = "BS interference";
            t.kind = NodeKind::BaseStation;
            t.level = BsLevel::High;
            t.density = ring_density(cfg_.lambda_b, g.bs_radius, rus);
            t.inner = t.mean_inner = cap.r_min;
            t.outer = cap.r_max;
            t.gain = effective_gain(gp, NodeKind::BaseStation, NodeKind::SatelliteUser, false);
        } else {
            t.name = "terrestrial-user interference";
            t.kind = NodeKind::TerrestrialUser;
            t.density = cfg_.lambda_ut;
            t.inner = 0.0;
            t.mean_inner = cfg_.ut_inner_radius;
            t.outer = g.ut_disk_radius;
            t.gain = effective_gain(gp, NodeKind::TerrestrialUser, NodeKind::SatelliteUser, false);
        }
        tiers_.push_back(t);
    }
}

double ScenarioModel::nonempty_probability() const {
    return leoshare::nonempty_probability(serving_density_, serving_bounds_);
}

double ScenarioModel::nearest_distance_pdf(double r) const {
    return leoshare::nearest_distance_pdf(serving_density_, serving_bounds_, r);
}

double ScenarioModel::nearest_distance_quantile(double u) const {
    return leoshare::nearest_distance_quantile(serving_density_, serving_bounds_, u);
}

double ScenarioModel::tier_integral(const InterfererTier& t, double r, double s, int k) const {
    const double lo = t.starts_at_serving ? r : t.inner;
    const double hi = t.outer;
    if (!(hi > lo) || t.density == 0.0) return 0.0;
    const double gp = t.gain * t.power;
    const double alpha = t.alpha;
    const bool sr = t.fading == InterfererTier::Fading::ShadowedRician;

    // Integrand in v, already multiplied by v.
    const auto integrand = [&](double v) {
        const double kv = gp * std::pow(v, -alpha);
        const double u = s * kv;
        if (k == 0) {
            const double c = sr ? sr_laplace_complement(cfg_.sr, u) : nakagami_laplace_complement(cfg_.nakagami, u);
            return c * v;
        }
        const double d = sr ? sr_laplace_factor_derivative(cfg_.sr, u, k)
                            : nakagami_laplace_factor_derivative(cfg_.nakagami, u, k);
        return std::pow(kv, k) * d * v;
    };

    // The order-0 result enters exp(-g); resolving g below machine precision is pointless.
    const double floor = k == 0 ? std::numeric_limits<double>::epsilon() / (2.0 * kPi * t.density) : 0.0;
    const auto in_log = [&](double x) {
        const double v = std::exp(x);
        return integrand(v) * v;
    };
    double value = 0.0;
    double start = lo;
    if (!(lo > 0.0)) {
        // From the centre the integrand rises linearly up to where u = s K v^-alpha is of order one,
        // then decays; below that knee a linear rule is accurate, above it log coordinates are.
        double knee = std::min(hi, std::pow(s * gp, 1.0 / alpha));
        if (!(knee > 0.0)) knee = hi;
        value = integrate_checked(integrand, 0.0, knee, quad_.radial_rel_tol, quad_, t.name.c_str(), floor);
        start = knee;
    }
    if (hi > start) {
        value += integrate_checked(in_log, std::log(start), std::log(hi), quad_.radial_rel_tol, quad_,
                                   t.name.c_str(), floor);
    }
    return 2.0 * kPi * t.density * value;
}

double ScenarioModel::laplace_exponent(double r, double s, int k) const {
    if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
    if (s < 0.0) throw std::domain_error("Laplace argument must be non-negative");
    double g = 0.0;
    if (k == 0) {
        if (s == 0.0) return 0.0;
        g = -s * cfg_.noise_power;
        for (const auto& t : tiers_) g -= tier_integral(t, r, s, 0);
        return g;
    }
    if (k == 1) g = -cfg_.noise_power;
    for (const auto& t : tiers_) g += tier_integral(t, r, s, k);
    return g;
}

double ScenarioModel::laplace(double r, double s) const {
    return std::exp(laplace_exponent(r, s, 0));
}

double ScenarioModel::laplace_derivative(double r, double s, int v) const {
    if (v < 0) throw std::invalid_argument("derivative order must be non-negative");
    const double l = laplace(r, s);
    if (v == 0) return l;
    std::vector<double> g(static_cast<std::size_t>(v) + 1);
    for (int k = 1; k <= v; ++k) g[k] = laplace_exponent(r, s, k);
    std::vector<double> y(static_cast<std::size_t>(v) + 1, 0.0);
    y[0] = 1.0;
    for (int n = 0; n < v; ++n) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += binomial(n, k) * y[n - k] * g[k + 1];
        y[n + 1] = acc;
    }
    return l * y[v];
}

double ScenarioModel::coverage_argument(double r, double gamma) const {
    const double alpha = cfg_.alpha_s;
    return cfg_.sr.rate() * gamma * std::pow(r, alpha) / (serving_gain_ * serving_power_);
}

double ScenarioModel::conditional_coverage(double r, double gamma) const {
    if (gamma <= 0.0) return 1.0;
    const double s = coverage_argument(r, gamma);
    const int m = cfg_.sr.m();
    const double l = laplace(r, s);
    if (l == 0.0) return 0.0;
    if (m == 1) return std::min(cfg_.sr.weights()[0] * l, 1.0);

    // Terms t_v = s^v / v! (-1)^v L^(v)(s), built from the Bell recurrence.
    std::vector<double> g(static_cast<std::size_t>(m));
    for (int k = 1; k < m; ++k) g[k] = laplace_exponent(r, s, k);
    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    y[0] = 1.0;
    for (int n = 0; n + 1 < m; ++n) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += binomial(n, k) * y[n - k] * g[k + 1];
        y[n + 1] = acc;
    }
    double cov = 0.0;
    double partial = 0.0;
    for (int z = 0; z < m; ++z) {
        const double sign = (z % 2 == 0) ? 1.0 : -1.0;
        partial += std::pow(s, z) / factorial(z) * sign * l * y[z];
        cov += cfg_.sr.weights()[z] * partial;
    }
    return std::clamp(cov, 0.0, 1.0);
}

template <class F>
double ScenarioModel::expect_over_distance(F&& f, const char* name, double abs_floor) const {
    // w = (r^2 - r_min^2) / (r_max^2 - r_min^2) has density mu e^(-mu w) / (1 - e^(-mu)) on [0, 1].
    const CapBounds& b = serving_bounds_;
    const double span = (b.r_max - b.r_min) * (b.r_max + b.r_min);
    const double mu = serving_density_ * kPi * span;
    const double norm = mu > 0.0 ? mu / -std::expm1(-mu) : 1.0;
    const auto integrand = [&](double w) {
        const double r = std::sqrt(b.r_min * b.r_min + w * span);
        return f(r) * norm * std::exp(-mu * w);
    };
    // Beyond 45/mu the weight is below e^-45 of its peak.
    const double upper = mu > 45.0 ? 45.0 / mu : 1.0;
    return integrate_checked(integrand, 0.0, upper, quad_.distance_rel_tol, quad_, name, abs_floor);
}

double ScenarioModel::coverage_probability(double gamma) const {
    const double pne = nonempty_probability();
    if (pne == 0.0) return 0.0;
    if (gamma <= 0.0) return pne;
    const double c =
        expect_over_distance([&](double r) { return conditional_coverage(r, gamma); }, "serving-distance expectation",
                                   quad_.probability_abs_tol);
    return std::clamp(pne * c, 0.0, 1.0);
}

double ScenarioModel::ergodic_se() const {
    const double pne = nonempty_probability();
    if (pne == 0.0) return 0.0;
    const double log2e = std::numbers::log2e;
    if (quad_.gamma_transform == GammaTransform::ExpSinh) {
        boost::math::quadrature::exp_sinh<double> integrator;
        double err = 0.0;
        double l1 = 0.0;
        const auto f = [&](double gamma) { return log2e / (1.0 + gamma) * coverage_probability(gamma); };
        const double v = integrator.integrate(f, quad_.outer_rel_tol, &err, &l1);
        if (!std::isfinite(v) || err > std::max({quad_.abs_tol, quad_.se_abs_tol, 10.0 * quad_.outer_rel_tol * l1})) {
            throw QuadratureError("SINR-threshold integral", v, err);
        }
        return v;
    }
    // gamma = t / (1 - t): d gamma / (1 + gamma) = dt / (1 - t).
    const auto f = [&](double t) { return log2e / (1.0 - t) * coverage_probability(t / (1.0 - t)); };
    return integrate_checked(f, 0.0, 1.0, quad_.outer_rel_tol, quad_, "SINR-threshold integral",
                            quad_.se_abs_tol);
}

double ScenarioModel::mean_fading_power(const InterfererTier& t) const {
    return t.fading == InterfererTier::Fading::ShadowedRician ? cfg_.sr.mean_power() : 1.0;
}

double ScenarioModel::tier_mean(const InterfererTier& t, double inner) const {
    const double outer = t.outer;
    if (!(outer > inner) || t.density == 0.0) return 0.0;
    if (!(inner > 0.0)) throw std::domain_error(t.name + ": mean interference diverges without an inner radius");
    const double a = t.alpha;
    double radial;
    if (a == 2.0) {
        radial = std::log(outer / inner);
    } else if (a == 4.0) {
        radial = 0.5 * (1.0 / (inner * inner) - 1.0 / (outer * outer));
    } else {
        const auto f = [a](double x) { return std::exp((2.0 - a) * x); };
        radial = integrate_checked(f, std::log(inner), std::log(outer), quad_.radial_rel_tol, quad_, t.name.c_str());
    }
    return 2.0 * kPi * t.density * t.gain * t.power * mean_fading_power(t) * radial;
}

MeanInterference ScenarioModel::mean_interference() const {
    MeanInterference out;
    for (const auto& t : tiers_) {
        if (t.starts_at_serving) {
            if (nonempty_probability() == 0.0) continue;
            out.satellite_tier +=
                expect_over_distance([&](double r) { return tier_mean(t, r); }, "mean same-system interference");
        } else {
            out.terrestrial_tier += tier_mean(t, t.mean_inner);
        }
    }
    return out;
}

double ScenarioModel::se_lower_bound() const {
    const double pne = nonempty_probability();
    if (pne == 0.0) return 0.0;
    const double mean_log_r = expect_over_distance([](double r) { return std::log(r); }, "mean log distance");
    const double log_signal =
        std::log(serving_gain_ * serving_power_) + cfg_.sr.mean_log_power() - cfg_.alpha_s * mean_log_r;
    const MeanInterference mi = mean_interference();
    const double denom = mi.satellite_tier + mi.terrestrial_tier + cfg_.noise_power;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return pne * std::log2(1.0 + std::exp(log_signal) / denom);
}

double laplace_interference(const ScenarioConfig& cfg, double r, double s) {
    return ScenarioModel(cfg).laplace(r, s);
}

double laplace_derivative(const ScenarioConfig& cfg, double r, double s, int v) {
    return ScenarioModel(cfg).laplace_derivative(r, s, v);
}

double coverage_probability(const ScenarioConfig& cfg, double gamma) {
    return ScenarioModel(cfg).coverage_probability(gamma);
}

double ergodic_se(const ScenarioConfig& cfg, const QuadratureConfig& quad) {
    return ScenarioModel(cfg, quad).ergodic_se();
}

MeanInterference mean_interference(const ScenarioConfig& cfg) {
    return ScenarioModel(cfg).mean_interference();
}

double se_lower_bound(const ScenarioConfig& cfg) {
    return ScenarioModel(cfg).se_lower_bound();
}

double density_ratio_threshold(const ScenarioConfig& cfg, LinkFamily family) {
    const NetworkGeometry& g = cfg.geometry;
    const GainProfile& gp = cfg.gains;
    if (cfg.alpha_s != 2.0) throw std::domain_error("density-ratio threshold needs alpha_s = 2");
    if (family == LinkFamily::Uplink) {
        const CapBounds b = cap_bounds_ul(g, NodeKind::BaseStation);
        const CapBounds ut = cap_bounds_ul(g, NodeKind::TerrestrialUser);
        const double r_psi = bs_sidelobe_boundary_radius(g);
        const double r_main =
            std::clamp(distance_at_elevation(g.bs_radius, g.satellite_radius, g.psi1_threshold), r_psi, b.r_max);
        const double g_low = effective_gain(gp, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::Low);
        const double g_high = effective_gain(gp, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::High);
        const double g_main = effective_gain(gp, NodeKind::BaseStation, NodeKind::Satellite, false, BsLevel::Main);
        const double g_ut = effective_gain(gp, NodeKind::TerrestrialUser, NodeKind::Satellite, false);
        // The main-lobe term vanishes whenever every visible satellite sits in the BS side lobes.
        const double num = g_low * std::log(r_psi / b.r_min) + g_high * std::log(r_main / r_psi) +
                           g_main * std::log(b.r_max / r_main);
        const double den = g_ut * std::log(ut.r_max / ut.r_min);
        return cfg.p_b * g.bs_radius / (cfg.p_ut * g.terrestrial_user_radius) * num / den;
    }
    if (cfg.alpha_t != 4.0) throw std::domain_error("downlink density-ratio threshold needs alpha_t = 4");
    const CapBounds b = cap_bounds_dl(g, NodeKind::BaseStation);
    const double eps = cfg.ut_inner_radius;
    const double rmax_ut = g.ut_disk_radius;
    if (!(eps > 0.0 && rmax_ut > eps)) throw std::domain_error("downlink threshold needs 0 < inner radius < disk radius");
    const double g_b = effective_gain(gp, NodeKind::BaseStation, NodeKind::SatelliteUser, false);
    const double g_ut = effective_gain(gp, NodeKind::TerrestrialUser, NodeKind::SatelliteUser, false);
    const double num = 1.0 / (b.r_min * b.r_min) - 1.0 / (b.r_max * b.r_max);
    const double den = 1.0 / (eps * eps) - 1.0 / (rmax_ut * rmax_ut);
    return cfg.p_b * g.bs_radius * g_b / (cfg.p_ut * g.satellite_user_radius * g_ut) * num / den;
}

}  // namespace leoshare
