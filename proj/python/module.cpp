#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leoshare/analytic.hpp"
#include "leoshare/config.hpp"
#include "leoshare/montecarlo.hpp"
#include "leoshare/sweep.hpp"

namespace py = pybind11;
using namespace leoshare;

namespace {

py::dict estimate_to_dict(const EstimateWithCI& e) {
    py::dict d;
    d["value"] = e.value;
    d["std_error"] = e.std_error;
    d["trials"] = e.trials;
    d["seed"] = e.seed;
    return d;
}

py::dict mc_to_dict(const McEstimate& m) {
    py::dict d;
    d["ergodic_se"] = estimate_to_dict(m.ergodic_se);
    d["conditional_se"] = estimate_to_dict(m.conditional_se);
    d["served_fraction"] = estimate_to_dict(m.served_fraction);
    d["mean_interference_terrestrial"] = estimate_to_dict(m.mean_interference_terrestrial);
    d["mean_interference_satellite"] = estimate_to_dict(m.mean_interference_satellite);
    py::list cov;
    for (const auto& c : m.coverage) cov.append(estimate_to_dict(c));
    d["gamma_grid"] = m.gamma_grid;
    d["coverage"] = cov;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stochastic-geometry model of LEO satellite and terrestrial spectrum sharing";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

    py::enum_<Sharing>(m, "Sharing")
        .value("UL_DL", Sharing::UlDl)
        .value("UL_UL", Sharing::UlUl)
        .value("DL_DL", Sharing::DlDl)
        .value("DL_UL", Sharing::DlUl);
    m.def("parse_sharing", [](const std::string& s) { return parse_sharing(s); });

    py::enum_<LinkFamily>(m, "LinkFamily")
        .value("UPLINK", LinkFamily::Uplink)
        .value("DOWNLINK", LinkFamily::Downlink);

    py::enum_<GammaTransform>(m, "GammaTransform")
        .value("RATIONAL", GammaTransform::Rational)
        .value("EXP_SINH", GammaTransform::ExpSinh);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("outer_rel_tol", &QuadratureConfig::outer_rel_tol)
        .def_readwrite("distance_rel_tol", &QuadratureConfig::distance_rel_tol)
        .def_readwrite("radial_rel_tol", &QuadratureConfig::radial_rel_tol)
        .def_readwrite("probability_abs_tol", &QuadratureConfig::probability_abs_tol)
        .def_readwrite("se_abs_tol", &QuadratureConfig::se_abs_tol)
        .def_readwrite("max_intervals", &QuadratureConfig::max_intervals)
        .def_readwrite("gamma_transform", &QuadratureConfig::gamma_transform);

    py::class_<ShadowedRicianParams>(m, "ShadowedRicianParams")
        .def(py::init<int, double, double>(), py::arg("m"), py::arg("b"), py::arg("omega"))
        .def_property_readonly("m", &ShadowedRicianParams::m)
        .def_property_readonly("b", &ShadowedRicianParams::b)
        .def_property_readonly("omega", &ShadowedRicianParams::omega)
        .def_property_readonly("zeta", &ShadowedRicianParams::zeta)
        .def("normalization", &ShadowedRicianParams::normalization)
        .def("mean_power", &ShadowedRicianParams::mean_power)
        .def("power_pdf", [](const ShadowedRicianParams& p, double x) { return sr_power_pdf(p, x); })
        .def("power_ccdf", [](const ShadowedRicianParams& p, double t) { return sr_power_ccdf(p, t); })
        .def("amplitude_pdf", [](const ShadowedRicianParams& p, double x) { return sr_amplitude_pdf(p, x); });

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("sharing", &ScenarioConfig::sharing)
        .def_readwrite("lambda_s", &ScenarioConfig::lambda_s)
        .def_readwrite("lambda_us", &ScenarioConfig::lambda_us)
        .def_readwrite("lambda_b", &ScenarioConfig::lambda_b)
        .def_readwrite("lambda_ut", &ScenarioConfig::lambda_ut)
        .def_readwrite("p_s", &ScenarioConfig::p_s)
        .def_readwrite("p_us", &ScenarioConfig::p_us)
        .def_readwrite("p_b", &ScenarioConfig::p_b)
        .def_readwrite("p_ut", &ScenarioConfig::p_ut)
        .def_readwrite("alpha_s", &ScenarioConfig::alpha_s)
        .def_readwrite("alpha_t", &ScenarioConfig::alpha_t)
        .def_readwrite("noise_power", &ScenarioConfig::noise_power)
        .def_readwrite("sr", &ScenarioConfig::sr)
        .def_readwrite("ut_inner_radius", &ScenarioConfig::ut_inner_radius)
        .def_readwrite("mc_ut_exclusion", &ScenarioConfig::mc_ut_exclusion)
        .def("validate", [](const ScenarioConfig& c) {
            py::list out;
            for (const auto& d : validate(c)) {
                py::dict e;
                e["severity"] = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
                e["field"] = d.field;
                e["message"] = d.message;
                out.append(e);
            }
            return out;
        });

    py::class_<ScenarioFile>(m, "ScenarioFile")
        .def_readonly("name", &ScenarioFile::name)
        .def_readwrite("base", &ScenarioFile::base)
        .def_readwrite("lambda_b_uplink", &ScenarioFile::lambda_b_uplink)
        .def_readwrite("lambda_b_downlink", &ScenarioFile::lambda_b_downlink)
        .def_readwrite("ratio", &ScenarioFile::ratio)
        .def_readwrite("sharings", &ScenarioFile::sharings)
        .def_readwrite("mc_log10_ratios", &ScenarioFile::mc_log10_ratios)
        .def_readwrite("trials", &ScenarioFile::trials)
        .def_readwrite("seed", &ScenarioFile::seed)
        .def("scenario", &make_scenario, py::arg("sharing"), py::arg("ratio"));

    m.def("load_preset", &load_preset, py::arg("name"));
    m.def("preset_names", &preset_names);
    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("name") = "config");
    m.def("load_scenario", [](const std::string& path) { return load_scenario(path); }, py::arg("path"));

    m.def(
        "coverage_probability",
        [](const ScenarioConfig& c, double gamma, const QuadratureConfig& q) {
            return ScenarioModel(c, q).coverage_probability(gamma);
        },
        py::arg("config"), py::arg("gamma"), py::arg("quadrature") = QuadratureConfig{});
    m.def("ergodic_se", &ergodic_se, py::arg("config"), py::arg("quadrature") = QuadratureConfig{});
    m.def("se_lower_bound", &se_lower_bound, py::arg("config"));
    m.def("nonempty_probability", [](const ScenarioConfig& c) { return ScenarioModel(c).nonempty_probability(); });
    m.def("laplace_interference", &laplace_interference, py::arg("config"), py::arg("r"), py::arg("s"));
    m.def("mean_interference", [](const ScenarioConfig& c) {
        const MeanInterference mi = mean_interference(c);
        return py::make_tuple(mi.satellite_tier, mi.terrestrial_tier);
    });
    m.def("density_ratio_threshold", &density_ratio_threshold, py::arg("config"), py::arg("family"));

    m.def(
        "estimate",
        [](const ScenarioConfig& c, long long trials, std::uint64_t seed, unsigned threads,
           std::vector<double> gamma_grid) {
            McOptions opts;
            opts.threads = threads;
            opts.gamma_grid = std::move(gamma_grid);
            McEstimate e;
            {
                py::gil_scoped_release release;
                e = estimate(c, trials, seed, opts);
            }
            return mc_to_dict(e);
        },
        py::arg("config"), py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 1,
        py::arg("gamma_grid") = std::vector<double>{});

    m.def(
        "sweep_csv",
        [](const ScenarioFile& f, const std::string& grid, long long trials, std::uint64_t seed, unsigned threads) {
            SweepSpec spec = SweepSpec::from_file(f);
            spec.grid = parse_grid(grid);
            spec.trials = trials;
            spec.seed = seed;
            spec.threads = threads;
            spec.locate_crossings = false;
            py::gil_scoped_release release;
            return to_csv(run_sweep(spec));
        },
        py::arg("file"), py::arg("grid") = "0:4:9", py::arg("trials") = 0, py::arg("seed") = 1,
        py::arg("threads") = 1);
}
