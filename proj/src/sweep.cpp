#include "leoshare/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "leoshare/montecarlo.hpp"

namespace leoshare {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Sharing terrestrial_dl(LinkFamily f) { return f == LinkFamily::Uplink ? Sharing::UlDl : Sharing::DlDl; }
Sharing terrestrial_ul(LinkFamily f) { return f == LinkFamily::Uplink ? Sharing::UlUl : Sharing::DlUl; }

std::optional<double> bisect_if_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) return std::nullopt;
    return bisect(f, lo, hi, tol);
}

}  // namespace

SweepSpec SweepSpec::from_file(const ScenarioFile& file) {
    SweepSpec s;
    s.file = file;
    s.sharings = file.sharings;
    s.grid = file.grid;
    s.trials = file.trials;
    s.seed = file.seed;
    return s;
}

double SweepRow::relative_deviation() const {
    if (std::isnan(mc_se) || std::isnan(analytic_se) || mc_se == 0.0) return kNaN;
    return (analytic_se - mc_se) / mc_se;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if ((flo < 0.0) == (fhi < 0.0) && flo != 0.0 && fhi != 0.0) {
        throw std::domain_error("bisection interval does not bracket a root");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<double> se_crossing(const ScenarioFile& file, LinkFamily family, double lo, double hi,
                                  const QuadratureConfig& quad, double tol) {
    const auto diff = [&](double x) {
        const double ratio = std::pow(10.0, x);
        return ergodic_se(make_scenario(file, terrestrial_dl(family), ratio), quad) -
               ergodic_se(make_scenario(file, terrestrial_ul(family), ratio), quad);
    };
    return bisect_if_bracketed(diff, lo, hi, tol);
}

std::optional<double> bound_crossing(const ScenarioFile& file, LinkFamily family, double lo, double hi, double tol) {
    const auto diff = [&](double x) {
        const double ratio = std::pow(10.0, x);
        return se_lower_bound(make_scenario(file, terrestrial_dl(family), ratio)) -
               se_lower_bound(make_scenario(file, terrestrial_ul(family), ratio));
    };
    return bisect_if_bracketed(diff, lo, hi, tol);
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.sharings.empty()) throw std::invalid_argument("sweep needs at least one sharing configuration");
    if (spec.trials < 0) throw std::invalid_argument("trial count must be non-negative");
    const std::vector<double> grid = spec.grid.log10_values();
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("grid must be sorted");

    SweepResult out;
    out.config_name = spec.file.name;
    const std::size_t n = spec.sharings.size() * grid.size();
    out.rows.resize(n);

    parallel_for(n, spec.threads, [&](std::size_t idx) {
        const Sharing sharing = spec.sharings[idx / grid.size()];
        const double ratio = std::pow(10.0, grid[idx % grid.size()]);
        SweepRow& row = out.rows[idx];
        row.sharing = sharing;
        row.ratio = ratio;
        row.trials = spec.trials;
        row.seed = spec.trials > 0 ? stream_seed(spec.seed, idx) : 0;
        row.mc_se = kNaN;
        row.mc_stderr = kNaN;
        const ScenarioConfig cfg = make_scenario(spec.file, sharing, ratio);
        try {
            row.analytic_se = ScenarioModel(cfg, spec.quadrature).ergodic_se();
        } catch (const std::exception& e) {
            row.analytic_se = kNaN;
            row.error = e.what();
        }
        if (spec.trials > 0) {
            const McEstimate mc = estimate(cfg, spec.trials, row.seed);
            row.mc_se = mc.ergodic_se.value;
            row.mc_stderr = mc.ergodic_se.std_error;
        }
    });

    if (!spec.locate_crossings) return out;
    for (LinkFamily family : {LinkFamily::Uplink, LinkFamily::Downlink}) {
        const auto has = [&](Sharing s) {
            return std::find(spec.sharings.begin(), spec.sharings.end(), s) != spec.sharings.end();
        };
        if (!has(terrestrial_dl(family)) || !has(terrestrial_ul(family))) continue;
        CrossingReport rep;
        rep.family = family;
        const auto column = [&](Sharing s) {
            const std::size_t k = static_cast<std::size_t>(
                std::find(spec.sharings.begin(), spec.sharings.end(), s) - spec.sharings.begin());
            std::vector<double> v;
            for (std::size_t i = 0; i < grid.size(); ++i) v.push_back(out.rows[k * grid.size() + i].analytic_se);
            return v;
        };
        const auto dl = column(terrestrial_dl(family));
        const auto ul = column(terrestrial_ul(family));
        try {
            for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
                const double a = dl[i] - ul[i];
                const double b = dl[i + 1] - ul[i + 1];
                if (std::isnan(a) || std::isnan(b)) continue;
                if ((a < 0.0) != (b < 0.0) || a == 0.0) {
                    rep.se_crossing_log10 = se_crossing(spec.file, family, grid[i], grid[i + 1], spec.quadrature);
                    break;
                }
            }
            if (!rep.se_crossing_log10) rep.note = "SE curves do not cross on the grid";
        } catch (const std::exception& e) {
            rep.note = std::string("crossing search failed: ") + e.what();
        }
        try {
            rep.threshold = density_ratio_threshold(make_scenario(spec.file, terrestrial_dl(family), 1.0), family);
            rep.bound_crossing_log10 = bound_crossing(spec.file, family, grid.front() - 4.0, grid.back() + 4.0);
        } catch (const std::exception& e) {
            if (!rep.note.empty()) rep.note += "; ";
            rep.note += std::string("threshold unavailable: ") + e.what();
        }
        out.crossings.push_back(rep);
    }
    return out;
}

std::vector<AgreementCase> analytic_vs_mc(const ScenarioFile& file, const std::vector<double>& log10_ratios,
                                          long long trials, std::uint64_t seed, unsigned threads) {
    std::vector<AgreementCase> cases;
    for (Sharing s : kAllSharings) {
        for (double x : log10_ratios) {
            AgreementCase c;
            c.sharing = s;
            c.ratio = std::pow(10.0, x);
            cases.push_back(c);
        }
    }
    parallel_for(cases.size(), threads, [&](std::size_t i) {
        AgreementCase& c = cases[i];
        const ScenarioConfig cfg = make_scenario(file, c.sharing, c.ratio);
        const ScenarioModel model(cfg);
        c.analytic_se = model.ergodic_se();
        c.lower_bound = model.se_lower_bound();
        const McEstimate mc = estimate(cfg, trials, stream_seed(seed, i));
        c.mc_se = mc.ergodic_se.value;
        c.mc_stderr = mc.ergodic_se.std_error;
        c.tolerance = std::max(3.0 * c.mc_stderr, 0.05 * std::abs(c.mc_se));
        c.agrees = std::abs(c.analytic_se - c.mc_se) <= c.tolerance;
        c.bound_holds = c.lower_bound <= c.analytic_se;
    });
    return cases;
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "config,ratio,analytic_se,mc_se,mc_stderr,trials,seed,rel_dev\n";
    for (const auto& r : result.rows) {
        os << to_string(r.sharing) << ',' << fmt(r.ratio) << ',' << fmt(r.analytic_se) << ',' << fmt(r.mc_se) << ','
           << fmt(r.mc_stderr) << ',' << r.trials << ',' << r.seed << ',' << fmt(r.relative_deviation()) << '\n';
    }
    return os.str();
}

std::vector<SweepRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("config,ratio,analytic_se", 0) != 0) {
        throw std::invalid_argument("missing sweep CSV header");
    }
    std::vector<SweepRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (f.size() < 7) throw std::invalid_argument("line " + std::to_string(line_no) + ": too few columns");
        SweepRow r;
        r.sharing = parse_sharing(f[0]);
        r.ratio = std::strtod(f[1].c_str(), nullptr);
        r.analytic_se = std::strtod(f[2].c_str(), nullptr);
        r.mc_se = std::strtod(f[3].c_str(), nullptr);
        r.mc_stderr = std::strtod(f[4].c_str(), nullptr);
        r.trials = std::stoll(f[5]);
        r.seed = std::stoull(f[6]);
        rows.push_back(r);
    }
    return rows;
}

nlohmann::json summary_json(const SweepResult& result) {
    using nlohmann::json;
    json j;
    j["config"] = result.config_name;
    const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json crossings = json::array();
    for (const auto& c : result.crossings) {
        json e;
        e["family"] = c.family == LinkFamily::Uplink ? "uplink" : "downlink";
        e["se_crossing_log10_ratio"] = opt(c.se_crossing_log10);
        e["se_crossing_ratio"] = c.se_crossing_log10 ? json(std::pow(10.0, *c.se_crossing_log10)) : json(nullptr);
        e["bound_crossing_ratio"] =
            c.bound_crossing_log10 ? json(std::pow(10.0, *c.bound_crossing_log10)) : json(nullptr);
        e["threshold"] = opt(c.threshold);
        if (c.threshold && c.bound_crossing_log10) {
            const double rel = std::pow(10.0, *c.bound_crossing_log10) / *c.threshold - 1.0;
            e["bound_vs_threshold_rel"] = rel;
        }
        e["verdict"] = c.threshold ? "terrestrial uplink sharing preferred when lambda_ut/lambda_b <= " +
                                         std::to_string(*c.threshold)
                                   : "n/a";
        if (!c.note.empty()) e["note"] = c.note;
        crossings.push_back(e);
    }
    j["crossings"] = crossings;
    json failures = json::array();
    for (const auto& r : result.rows) {
        if (!r.error.empty()) failures.push_back({{"config", to_string(r.sharing)}, {"ratio", r.ratio}, {"error", r.error}});
    }
    j["failures"] = failures;
    return j;
}

}  // namespace leoshare
