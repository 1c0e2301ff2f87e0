#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "leoshare/analytic.hpp"
#include "leoshare/config.hpp"

namespace leoshare {

struct SweepSpec {
    ScenarioFile file;
    std::vector<Sharing> sharings;
    GridSpec grid;
    long long trials = 0;  // 0 = analytic only
    std::uint64_t seed = 1;
    unsigned threads = 1;
    QuadratureConfig quadrature;
    bool locate_crossings = true;

    static SweepSpec from_file(const ScenarioFile& file);
};

struct SweepRow {
    Sharing sharing = Sharing::UlDl;
    double ratio = 1.0;
    double analytic_se = 0.0;  // NaN when the quadrature failed
    double mc_se = 0.0;        // NaN without Monte Carlo
    double mc_stderr = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::string error;

    double relative_deviation() const;
};

struct CrossingReport {
    LinkFamily family = LinkFamily::Uplink;
    // log10 of the ratio where the terrestrial-downlink and terrestrial-uplink SE curves meet.
    std::optional<double> se_crossing_log10;
    // Same for the lower bounds, and the closed-form threshold it should match.
    std::optional<double> bound_crossing_log10;
    std::optional<double> threshold;
    std::string note;
};

struct SweepResult {
    std::string config_name;
    std::vector<SweepRow> rows;
    std::vector<CrossingReport> crossings;
};

SweepResult run_sweep(const SweepSpec& spec);

// CSV with columns config, ratio, analytic_se, mc_se, mc_stderr, trials, seed, rel_dev.
std::string to_csv(const SweepResult& result);
std::vector<SweepRow> parse_csv(const std::string& text);

nlohmann::json summary_json(const SweepResult& result);

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

// Locates where SE(terrestrial downlink) = SE(terrestrial uplink) in log10 ratio,
// searching [lo, hi]. Returns nullopt when the difference does not change sign.
std::optional<double> se_crossing(const ScenarioFile& file, LinkFamily family, double lo, double hi,
                                  const QuadratureConfig& quad = {}, double tol = 1e-3);
std::optional<double> bound_crossing(const ScenarioFile& file, LinkFamily family, double lo, double hi,
                                     double tol = 1e-4);

struct AgreementCase {
    Sharing sharing = Sharing::UlDl;
    double ratio = 1.0;
    double analytic_se = 0.0;
    double lower_bound = 0.0;
    double mc_se = 0.0;
    double mc_stderr = 0.0;
    double tolerance = 0.0;  // max(3 standard errors, 5% of the MC estimate)
    bool agrees = false;
    bool bound_holds = false;
};

// Analytic versus Monte Carlo SE for every sharing mode at each ratio.
std::vector<AgreementCase> analytic_vs_mc(const ScenarioFile& file, const std::vector<double>& log10_ratios,
                                          long long trials, std::uint64_t seed, unsigned threads = 1);

// Runs fn(i) for i in [0, n) over a pool of threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace leoshare
