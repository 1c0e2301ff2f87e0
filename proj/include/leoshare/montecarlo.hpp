#pragma once

#include <cstdint>
#include <vector>

#include "leoshare/scenario.hpp"

namespace leoshare {

struct TrialResult {
    double sinr = 0.0;
    double serving_distance = 0.0;
    bool served = false;
    // Set when interference and noise are both zero; sinr is then +inf.
    bool interference_free = false;
    double signal = 0.0;
    double interference_satellite_tier = 0.0;
    double interference_terrestrial_tier = 0.0;
};

struct EstimateWithCI {
    double value = 0.0;
    double std_error = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
};

enum class SamplingMode {
    Cap,   // points drawn on the spherical caps in 3D
    Ring,  // distances drawn from the equivalent planar annulus
};

struct McOptions {
    SamplingMode sampling = SamplingMode::Cap;
    unsigned threads = 1;
    std::vector<double> gamma_grid;
};

struct McEstimate {
    EstimateWithCI ergodic_se;       // unserved trials contribute zero
    EstimateWithCI conditional_se;   // served trials only
    EstimateWithCI served_fraction;
    EstimateWithCI mean_interference_terrestrial;
    EstimateWithCI mean_interference_satellite;  // served trials only
    std::vector<double> gamma_grid;
    std::vector<EstimateWithCI> coverage;
};

// One network realisation drawn from the stream keyed by `trial_seed`.
TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t trial_seed, SamplingMode mode = SamplingMode::Cap);
TrialResult run_trial(const ScenarioConfig& cfg, RngStream& rng, SamplingMode mode = SamplingMode::Cap);

// Runs trials 0..n-1 with seeds stream_seed(master_seed, i). The reduction is
// in trial order, so the result does not depend on the thread count.
std::vector<TrialResult> run_trials(const ScenarioConfig& cfg, long long n_trials, std::uint64_t master_seed,
                                    const McOptions& opts = {});

McEstimate estimate(const ScenarioConfig& cfg, long long n_trials, std::uint64_t master_seed,
                    const McOptions& opts = {});

// Pairwise (cascade) summation in index order.
double pairwise_sum(const double* x, std::size_t n);

// Sample mean and its standard error.
EstimateWithCI summarize(const std::vector<double>& x, std::uint64_t seed = 0);

}  // namespace leoshare
