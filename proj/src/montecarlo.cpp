#include "leoshare/montecarlo.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "leoshare/antenna.hpp"
#include "leoshare/fading.hpp"
#include "leoshare/geometry.hpp"
#include "leoshare/units.hpp"

namespace leoshare {

namespace {

struct Link {
    double distance;
    double gain;  // effective gain of this link
};

// Distances (and BS gains) of every node of a tier seen from the observer.
std::vector<Link> sample_cap_links(double node_radius, double observer_radius, const CapBounds& bounds,
                                   double density, SamplingMode mode, RngStream& rng,
                                   const std::function<double(const Vec3&, double)>& gain_of) {
    std::vector<Link> out;
    if (mode == SamplingMode::Ring) {
        const double ring = ring_density(density, node_radius, observer_radius);
        for (double d : sample_ring_distances(bounds, ring, rng)) out.push_back({d, gain_of(Vec3{}, d)});
        return out;
    }
    const SphericalCap cap(node_radius, observer_radius, bounds);
    const Vec3 obs = cap.observer();
    for (const Vec3& p : sample_cap_points(cap, density, rng)) {
        const double d = distance(p, obs);
        out.push_back({d, gain_of(p, d)});
    }
    return out;
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t trial_seed, SamplingMode mode) {
    RngStream rng(trial_seed);
    return run_trial(cfg, rng, mode);
}

TrialResult run_trial(const ScenarioConfig& cfg, RngStream& rng, SamplingMode mode) {
    const NetworkGeometry& g = cfg.geometry;
    const GainProfile& gp = cfg.gains;
    TrialResult res;

    const bool uplink = is_uplink(cfg.sharing);
    const NodeKind server = uplink ? NodeKind::SatelliteUser : NodeKind::Satellite;
    const NodeKind receiver = uplink ? NodeKind::Satellite : NodeKind::SatelliteUser;
    const double observer_radius = uplink ? g.satellite_radius : g.satellite_user_radius;
    const double server_radius = uplink ? g.satellite_user_radius : g.satellite_radius;
    const CapBounds serving_cap = uplink ? cap_bounds_ul(g, server) : cap_bounds_dl(g, server);
    const double server_density = uplink ? cfg.lambda_us : cfg.lambda_s;
    const double server_power = uplink ? cfg.p_us : cfg.p_s;
    const double g_side = effective_gain(gp, server, receiver, false);
    const double g_main = effective_gain(gp, server, receiver, true);

    // Same-system tier first so its draws do not depend on terrestrial densities.
    auto same = sample_cap_links(server_radius, observer_radius, serving_cap, server_density, mode, rng,
                                 [&](const Vec3&, double) { return g_side; });
    if (!same.empty()) {
        auto nearest = std::min_element(same.begin(), same.end(),
                                        [](const Link& a, const Link& b) { return a.distance < b.distance; });
        std::iter_swap(same.begin(), nearest);
        res.served = true;
        res.serving_distance = same.front().distance;
        const double h = sample_sr_power_physical(cfg.sr, rng);
        res.signal = g_main * server_power * h * std::pow(res.serving_distance, -cfg.alpha_s);
        for (std::size_t i = 1; i < same.size(); ++i) {
            const double hi = sample_sr_power_physical(cfg.sr, rng);
            res.interference_satellite_tier += same[i].gain * server_power * hi * std::pow(same[i].distance, -cfg.alpha_s);
        }
    }

    double it = 0.0;
    switch (cfg.sharing) {
        case Sharing::UlDl: {
            const CapBounds cap = cap_bounds_ul(g, NodeKind::BaseStation);
            const Vec3 sat{0.0, 0.0, g.satellite_radius};
            const auto gain_of = [&](const Vec3& p, double d) {
                const double psi = mode == SamplingMode::Ring ? elevation_at_distance(g.bs_radius, g.satellite_radius, d)
                                                              : elevation_from(p, sat);
                const BsLevel level = bs_level_by_elevation(psi, g.psi1_threshold, g.psi2_threshold);
                return effective_gain(gp, NodeKind::BaseStation, NodeKind::Satellite, false, level);
            };
            for (const Link& l : sample_cap_links(g.bs_radius, g.satellite_radius, cap, cfg.lambda_b, mode, rng, gain_of)) {
                it += l.gain * cfg.p_b * sample_sr_power_physical(cfg.sr, rng) * std::pow(l.distance, -cfg.alpha_s);
            }
            break;
        }
        case Sharing::UlUl: {
            const CapBounds cap = cap_bounds_ul(g, NodeKind::TerrestrialUser);
            const double gain = effective_gain(gp, NodeKind::TerrestrialUser, NodeKind::Satellite, false);
            const auto links = sample_cap_links(g.terrestrial_user_radius, g.satellite_radius, cap, cfg.lambda_ut, mode,
                                                rng, [&](const Vec3&, double) { return gain; });
            for (const Link& l : links) {
                it += l.gain * cfg.p_ut * sample_sr_power_physical(cfg.sr, rng) * std::pow(l.distance, -cfg.alpha_s);
            }
            break;
        }
        case Sharing::DlDl: {
            const CapBounds cap = cap_bounds_dl(g, NodeKind::BaseStation);
            const double gain = effective_gain(gp, NodeKind::BaseStation, NodeKind::SatelliteUser, false);
            const auto links = sample_cap_links(g.bs_radius, g.satellite_user_radius, cap, cfg.lambda_b, mode, rng,
                                                [&](const Vec3&, double) { return gain; });
            for (const Link& l : links) {
                it += l.gain * cfg.p_b * sample_nakagami_power(cfg.nakagami, rng) * std::pow(l.distance, -cfg.alpha_t);
            }
            break;
        }
        case Sharing::DlUl: {
            const double gain = effective_gain(gp, NodeKind::TerrestrialUser, NodeKind::SatelliteUser, false);
            const double inner = cfg.mc_ut_exclusion ? cfg.ut_inner_radius : 0.0;
            for (double d : sample_disk_distances(inner, g.ut_disk_radius, cfg.lambda_ut, rng)) {
                it += gain * cfg.p_ut * sample_nakagami_power(cfg.nakagami, rng) * std::pow(d, -cfg.alpha_t);
            }
            break;
        }
    }
    res.interference_terrestrial_tier = it;

    if (res.served) {
        const double denom = res.interference_satellite_tier + it + cfg.noise_power;
        if (denom == 0.0) {
            res.interference_free = true;
            res.sinr = std::numeric_limits<double>::infinity();
        } else {
            res.sinr = res.signal / denom;
        }
    }
    return res;
}

std::vector<TrialResult> run_trials(const ScenarioConfig& cfg, long long n_trials, std::uint64_t master_seed,
                                    const McOptions& opts) {
    if (n_trials < 1) throw std::invalid_argument("Monte Carlo needs at least one trial");
    std::vector<TrialResult> results(static_cast<std::size_t>(n_trials));
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n_trials)));
    const auto work = [&](long long begin, long long end) {
        for (long long i = begin; i < end; ++i) {
            results[static_cast<std::size_t>(i)] =
                run_trial(cfg, stream_seed(master_seed, static_cast<std::uint64_t>(i)), opts.sampling);
        }
    };
    if (threads == 1) {
        work(0, n_trials);
        return results;
    }
    std::vector<std::thread> pool;
    const long long chunk = (n_trials + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const long long begin = t * chunk;
        const long long end = std::min(n_trials, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
    return results;
}

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

EstimateWithCI summarize(const std::vector<double>& x, std::uint64_t seed) {
    EstimateWithCI e;
    e.trials = static_cast<long long>(x.size());
    e.seed = seed;
    if (x.empty()) {
        e.value = std::numeric_limits<double>::quiet_NaN();
        e.std_error = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    const double n = static_cast<double>(x.size());
    e.value = pairwise_sum(x.data(), x.size()) / n;
    if (x.size() < 2) return e;
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - e.value) * (x[i] - e.value);
    e.std_error = std::sqrt(pairwise_sum(sq.data(), sq.size()) / (n - 1.0) / n);
    return e;
}

McEstimate estimate(const ScenarioConfig& cfg, long long n_trials, std::uint64_t master_seed, const McOptions& opts) {
    const std::vector<TrialResult> trials = run_trials(cfg, n_trials, master_seed, opts);
    McEstimate out;
    out.gamma_grid = opts.gamma_grid;

    std::vector<double> se, cond, served, it, is;
    se.reserve(trials.size());
    for (const auto& t : trials) {
        const double rate = t.served ? std::log2(1.0 + t.sinr) : 0.0;
        se.push_back(rate);
        served.push_back(t.served ? 1.0 : 0.0);
        it.push_back(t.interference_terrestrial_tier);
        if (t.served) {
            cond.push_back(rate);
            is.push_back(t.interference_satellite_tier);
        }
    }
    out.ergodic_se = summarize(se, master_seed);
    out.conditional_se = summarize(cond, master_seed);
    out.served_fraction = summarize(served, master_seed);
    out.mean_interference_terrestrial = summarize(it, master_seed);
    out.mean_interference_satellite = summarize(is, master_seed);

    std::vector<double> ind(trials.size());
    for (double gamma : opts.gamma_grid) {
        for (std::size_t i = 0; i < trials.size(); ++i) {
            ind[i] = (trials[i].served && trials[i].sinr >= gamma) ? 1.0 : 0.0;
        }
        out.coverage.push_back(summarize(ind, master_seed));
    }
    return out;
}

}  // namespace leoshare
