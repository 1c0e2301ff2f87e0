#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "leoshare/scenario.hpp"

namespace leoshare {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string field, const std::string& message);

    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

struct GridSpec {
    double lo = 0.0;  // log10 of the first ratio
    double hi = 4.0;  // log10 of the last ratio
    int points = 9;

    std::vector<double> log10_values() const;
};

// "lo:hi:n" with n >= 1 and lo <= hi.
GridSpec parse_grid(const std::string& text);

// A parsed scenario file: one base configuration plus the density and sweep
// settings that vary per sharing mode.
struct ScenarioFile {
    std::string name;
    ScenarioConfig base;
    double lambda_b_uplink = 0.0;    // per m^2
    double lambda_b_downlink = 0.0;  // per m^2
    double ratio = 1.0;              // lambda_ut / lambda_b
    std::vector<Sharing> sharings{kAllSharings, kAllSharings + 4};
    GridSpec grid;
    std::vector<double> mc_log10_ratios{1.0, 2.0, 3.0};
    long long trials = 0;
    std::uint64_t seed = 1;
};

// Parses the sectioned key = value format. Throws ConfigError naming the
// line and field of the first problem.
ScenarioFile parse_scenario(const std::string& text, const std::string& name = "config");
ScenarioFile load_scenario(const std::filesystem::path& path);

// Built-in presets, "vsat" and "handheld".
std::string preset_text(const std::string& name);
ScenarioFile load_preset(const std::string& name);
std::vector<std::string> preset_names();

// The scenario for one sharing mode with lambda_ut = ratio * lambda_b.
ScenarioConfig make_scenario(const ScenarioFile& file, Sharing sharing, double ratio);

// Numbers may be written as plain decimals or as powers such as 10^-4.5.
double parse_number(const std::string& text);

}  // namespace leoshare
