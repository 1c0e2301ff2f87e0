#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leoshare/analytic.hpp"
#include "leoshare/config.hpp"
#include "leoshare/sweep.hpp"

using namespace leoshare;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Source {
    std::string config_path;
    std::string preset;

    void add_to(CLI::App* app) {
        app->add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
        app->add_option("--preset", preset, "Built-in scenario")->check(CLI::IsMember({"vsat", "handheld"}));
    }

    // Loads the requested scenarios; both presets when nothing was given.
    std::vector<ScenarioFile> load(bool default_all) const {
        std::vector<ScenarioFile> out;
        if (!config_path.empty()) out.push_back(load_scenario(config_path));
        if (!preset.empty()) out.push_back(load_preset(preset));
        if (out.empty()) {
            if (!default_all) throw CLI::ValidationError("--config or --preset is required");
            for (const auto& name : preset_names()) out.push_back(load_preset(name));
        }
        return out;
    }
};

void print_thresholds(const ScenarioFile& f) {
    const auto t0 = std::chrono::steady_clock::now();
    const double ul = density_ratio_threshold(make_scenario(f, Sharing::UlDl, 1.0), LinkFamily::Uplink);
    const double dl = density_ratio_threshold(make_scenario(f, Sharing::DlDl, 1.0), LinkFamily::Downlink);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-10s uplink   lambda_ut/lambda_b <= %.2f\n", f.name.c_str(), ul);
    std::printf("%-10s downlink lambda_ut/lambda_b <= %.2f (inner radius %.1f m, disk %.1f m)\n", f.name.c_str(), dl,
                f.base.ut_inner_radius, f.base.geometry.ut_disk_radius);
    std::printf("%-10s computed in %.3f ms\n", f.name.c_str(), ms);
}

int run_validate(const Source& src, const std::string& positional) {
    std::vector<ScenarioFile> files;
    try {
        Source s = src;
        if (!positional.empty()) s.config_path = positional;
        files = s.load(false);
    } catch (const ConfigError& e) {
        json j = {{"file", positional.empty() ? src.config_path : positional},
                  {"diagnostics", json::array({{{"severity", "error"}, {"field", e.field()}, {"line", e.line()},
                                                {"message", e.what()}}})}};
        std::cout << j.dump(2) << "\n";
        return kExitValidation;
    }
    bool clean = true;
    for (const auto& f : files) {
        json diags = json::array();
        for (Sharing s : kAllSharings) {
            for (const auto& d : validate(make_scenario(f, s, f.ratio))) {
                const bool error = d.severity == Diagnostic::Severity::Error;
                if (error) clean = false;
                auto it = std::find_if(diags.begin(), diags.end(), [&](const json& e) {
                    return e["field"] == d.field && e["message"] == d.message && e["severity"] == (error ? "error" : "warning");
                });
                if (it == diags.end()) {
                    diags.push_back({{"severity", error ? "error" : "warning"},
                                     {"field", d.field},
                                     {"message", d.message},
                                     {"sharings", json::array()}});
                    it = std::prev(diags.end());
                }
                (*it)["sharings"].push_back(std::string(to_string(s)));
            }
        }
        std::cout << json{{"config", f.name}, {"clean", diags.empty()}, {"diagnostics", diags}}.dump(2) << "\n";
    }
    return clean ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral efficiency of LEO satellite networks sharing spectrum with terrestrial networks"};
    app.require_subcommand(1);

    Source sweep_src;
    std::string grid_text;
    std::string out_dir = ".";
    std::string report;
    std::string sharing_text;
    long long trials = -1;
    long long seed = -1;
    unsigned threads = 1;
    auto* sweep = app.add_subcommand("sweep", "Sweep the terrestrial density ratio");
    sweep_src.add_to(sweep);
    sweep->add_option("--grid", grid_text, "log10 ratio grid lo:hi:n");
    sweep->add_option("--trials", trials, "Monte Carlo trials per point (0 = analytic only)");
    sweep->add_option("--seed", seed, "Master seed");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--sharing", sharing_text, "Comma-separated subset of ul-dl,ul-ul,dl-dl,dl-ul");
    sweep->add_option("--report", report, "Extra report")->check(CLI::IsMember({"thresholds"}));

    Source validate_src;
    std::string validate_path;
    auto* val = app.add_subcommand("validate", "Check a scenario file");
    validate_src.add_to(val);
    val->add_option("path", validate_path, "Scenario file");

    Source thr_src;
    auto* thr = app.add_subcommand("thresholds", "Closed-form density-ratio thresholds");
    thr_src.add_to(thr);

    Source mc_src;
    long long mc_trials = 20000;
    long long mc_seed = 1;
    unsigned mc_threads = 1;
    auto* mcc = app.add_subcommand("mc-check", "Analytic versus Monte Carlo agreement for all sharing modes");
    mc_src.add_to(mcc);
    mcc->add_option("--trials", mc_trials, "Monte Carlo trials per case")->check(CLI::PositiveNumber);
    mcc->add_option("--seed", mc_seed, "Master seed");
    mcc->add_option("--threads", mc_threads, "Worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*val) return run_validate(validate_src, validate_path);

        if (*thr) {
            for (const auto& f : thr_src.load(true)) print_thresholds(f);
            return kExitOk;
        }

        if (*mcc) {
            bool all_ok = true;
            for (const auto& f : mc_src.load(false)) {
                const auto cases = analytic_vs_mc(f, f.mc_log10_ratios, mc_trials, static_cast<std::uint64_t>(mc_seed),
                                                  mc_threads);
                for (const auto& c : cases) {
                    std::printf("%s %-10s %-5s ratio=%-8g analytic=%.5f mc=%.5f+-%.5f tol=%.5f bound=%.5f %s\n",
                                c.agrees && c.bound_holds ? "PASS" : "FAIL", f.name.c_str(),
                                std::string(to_string(c.sharing)).c_str(), c.ratio, c.analytic_se, c.mc_se,
                                c.mc_stderr, c.tolerance, c.lower_bound, c.bound_holds ? "" : "(bound violated)");
                    all_ok = all_ok && c.agrees && c.bound_holds;
                }
            }
            return all_ok ? kExitOk : kExitValidation;
        }

        // sweep
        const auto files = sweep_src.load(false);
        int code = kExitOk;
        std::filesystem::create_directories(out_dir);
        for (const auto& f : files) {
            SweepSpec spec = SweepSpec::from_file(f);
            if (!grid_text.empty()) spec.grid = parse_grid(grid_text);
            if (trials >= 0) spec.trials = trials;
            if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
            if (!sharing_text.empty()) {
                spec.sharings.clear();
                std::stringstream ss(sharing_text);
                std::string item;
                while (std::getline(ss, item, ',')) spec.sharings.push_back(parse_sharing(item));
            }
            spec.threads = threads;
            const SweepResult res = run_sweep(spec);

            const auto csv_path = std::filesystem::path(out_dir) / (f.name + "_sweep.csv");
            const auto json_path = std::filesystem::path(out_dir) / (f.name + "_summary.json");
            std::ofstream(csv_path) << to_csv(res);
            json summary = summary_json(res);
            summary["trials"] = spec.trials;
            summary["seed"] = spec.seed;
            std::ofstream(json_path) << summary.dump(2) << "\n";

            std::printf("%-6s %12s %12s %12s %12s\n", "config", "ratio", "analytic_se", "mc_se", "mc_stderr");
            for (const auto& r : res.rows) {
                std::printf("%-6s %12.4g %12.6f %12.6f %12.6f%s\n", std::string(to_string(r.sharing)).c_str(), r.ratio,
                            r.analytic_se, r.mc_se, r.mc_stderr, r.error.empty() ? "" : "  (numerical failure)");
                if (!r.error.empty()) {
                    std::fprintf(stderr, "%s ratio %g: %s\n", std::string(to_string(r.sharing)).c_str(), r.ratio,
                                 r.error.c_str());
                    code = kExitNumerical;
                }
            }
            for (const auto& c : res.crossings) {
                const char* fam = c.family == LinkFamily::Uplink ? "uplink" : "downlink";
                if (c.se_crossing_log10) {
                    std::printf("%s SE curves cross at ratio 10^%.3f = %.2f\n", fam, *c.se_crossing_log10,
                                std::pow(10.0, *c.se_crossing_log10));
                } else {
                    std::printf("%s SE curves: %s\n", fam, c.note.c_str());
                }
                if (report == "thresholds" && c.threshold) {
                    std::printf("%s closed-form threshold %.2f, lower-bound crossing %s\n", fam, *c.threshold,
                                c.bound_crossing_log10
                                    ? std::to_string(std::pow(10.0, *c.bound_crossing_log10)).c_str()
                                    : "not found");
                }
            }
            if (report == "thresholds") print_thresholds(f);
            std::printf("wrote %s and %s\n", csv_path.c_str(), json_path.c_str());
        }
        return code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitValidation;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitValidation;
    } catch (const QuadratureError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}
