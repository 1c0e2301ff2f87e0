#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support/approx.hpp"
#include "leoshare/config.hpp"
#include "leoshare/sweep.hpp"
#include "leoshare/units.hpp"

using namespace leoshare;
using leoshare::testing::approx;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Replaces the first line starting with `key` by `replacement`.
std::string patch(std::string text, const std::string& key, const std::string& replacement) {
    const auto pos = text.find("\n" + key);
    REQUIRE(pos != std::string::npos);
    const auto end = text.find('\n', pos + 1);
    return text.replace(pos + 1, end - pos - 1, replacement);
}

int line_of(const std::string& text, const std::string& needle) {
    const auto pos = text.find(needle);
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

}  // namespace

TEST_CASE("presets parse and match the shipped files") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        const ScenarioFile f = load_preset(name);
        CHECK(f.name == name);
        CHECK(f.sharings.size() == 4);
        CHECK(f.base.lambda_s == approx(1e-12));
        const double log_us = name == "vsat" ? -5.5 : -4.5;
        CHECK(f.base.lambda_us == approx(std::pow(10.0, log_us) * 1e-6).epsilon(1e-14));
        CHECK(f.lambda_b_uplink == approx(1e-12));
        CHECK(f.base.geometry.satellite_radius == approx(6908e3));
        CHECK(f.base.sr.m() == 1);
        CHECK(f.base.ut_inner_radius == 7.0);
        CHECK(f.base.noise_power > 0.0);
        CHECK(read_file(std::string(LEOSHARE_SOURCE_DIR) + "/presets/" + name + ".ini") == preset_text(name));
        const ScenarioFile from_disk = load_scenario(std::string(LEOSHARE_SOURCE_DIR) + "/presets/" + name + ".ini");
        CHECK(from_disk.base.lambda_us == f.base.lambda_us);
        CHECK_FALSE(has_errors(validate(f.base)));
    }
    CHECK(to_string(load_preset("handheld").base.terminal) != to_string(load_preset("vsat").base.terminal));
    CHECK_THROWS_AS(preset_text("satphone"), std::invalid_argument);
}

TEST_CASE("numbers and grids") {
    CHECK(parse_number("10^-4.5") == approx(std::pow(10.0, -4.5)).epsilon(1e-15));
    CHECK(parse_number("1e-6") == 1e-6);
    CHECK(parse_number("+3.25") == 3.25);
    CHECK(parse_number(" 42 ") == 42.0);
    CHECK_THROWS_AS(parse_number("ten"), std::invalid_argument);
    CHECK_THROWS_AS(parse_number("1.5x"), std::invalid_argument);

    const GridSpec g = parse_grid("0:4:9");
    const auto v = g.log10_values();
    REQUIRE(v.size() == 9);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 4.0);
    CHECK(v[4] == 2.0);
    CHECK(parse_grid("2:2:1").log10_values() == std::vector<double>{2.0});
    CHECK_THROWS_AS(parse_grid("0:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("4:0:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:4:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:4:2.5"), std::invalid_argument);
}

TEST_CASE("configuration errors name the line and field") {
    const std::string base = preset_text("vsat");
    const auto expect_error = [](const std::string& text, const std::string& field, int line) {
        try {
            parse_scenario(text);
            FAIL("expected a ConfigError for " << field);
        } catch (const ConfigError& e) {
            CHECK(e.field() == field);
            CHECK(e.line() == line);
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };

    std::string t = patch(base, "satellite_user =", "satellite_user = lots");
    expect_error(t, "densities.satellite_user", line_of(t, "satellite_user = lots"));

    t = patch(base, "terminal =", "terminal = phone");
    expect_error(t, "satellite.terminal", line_of(t, "terminal = phone"));

    t = patch(base, "nakagami_m =", "nakagami_m = 0");
    expect_error(t, "fading.nakagami_m", line_of(t, "nakagami_m = 0"));

    t = patch(base, "grid =", "grid = 3:1:4");
    expect_error(t, "sweep.grid", line_of(t, "grid = 3:1:4"));

    t = patch(base, "trials =", "trials = -5");
    expect_error(t, "sweep.trials", line_of(t, "trials = -5"));

    t = base + "\n[sweep2]\ncolour = blue\n";
    expect_error(t, "sweep2.colour", line_of(t, "colour = blue"));

    t = patch(base, "seed =", "seed = 1\nseed = 2");
    expect_error(t, "sweep.seed", line_of(t, "seed = 2"));

    CHECK_THROWS_AS(parse_scenario("[satellite\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("x = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[satellite]\nnot a pair\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.ini"), ConfigError);

    // Missing required fields are reported without a line number.
    t = patch(base, "altitude_km =", "# altitude removed");
    expect_error(t, "satellite.altitude_km", 0);
}

TEST_CASE("invariant diagnostics") {
    ScenarioConfig c = load_preset("vsat").base;
    c.lambda_s = -1.0;
    auto d = validate(c);
    CHECK(has_errors(d));
    bool named = false;
    for (const auto& x : d) named = named || x.field == "densities.satellite";
    CHECK(named);

    c = load_preset("vsat").base;
    c.geometry.visibility_angle = deg_to_rad(89.0);
    CHECK(has_errors(validate(c)));

    c = load_preset("vsat").base;
    c.geometry.psi1_threshold = deg_to_rad(35.0);
    d = validate(c);
    CHECK_FALSE(has_errors(d));
    CHECK_FALSE(d.empty());
}

TEST_CASE("make_scenario picks the BS density by satellite direction") {
    const ScenarioFile f = load_preset("handheld");
    for (Sharing s : kAllSharings) {
        const ScenarioConfig c = make_scenario(f, s, 50.0);
        CHECK(c.sharing == s);
        const double lb = is_uplink(s) ? f.lambda_b_uplink : f.lambda_b_downlink;
        CHECK(c.lambda_b == lb);
        CHECK(c.lambda_ut == approx(50.0 * lb).epsilon(1e-15));
        CHECK(c.lambda_us == f.base.lambda_us);
    }
    for (const char* text : {"ul-dl", "ul-ul", "dl-dl", "dl-ul"}) CHECK(to_string(parse_sharing(text)) == text);
    CHECK_THROWS(parse_sharing("up-down"));
}

TEST_CASE("sweep output") {
    SweepSpec spec = SweepSpec::from_file(load_preset("handheld"));
    spec.locate_crossings = false;

    SUBCASE("analytic-only sweep with a single grid point") {
        spec.grid = parse_grid("2:2:1");
        spec.sharings = {Sharing::UlUl};
        const SweepResult r = run_sweep(spec);
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0].ratio == approx(100.0));
        CHECK(r.rows[0].trials == 0);
        CHECK(std::isnan(r.rows[0].mc_se));
        CHECK(r.rows[0].analytic_se > 0.0);
        CHECK(r.rows[0].error.empty());
    }

    SUBCASE("CSV round trip is exact") {
        spec.grid = parse_grid("0:4:5");
        spec.trials = 50;
        spec.seed = 12;
        const SweepResult r = run_sweep(spec);
        REQUIRE(r.rows.size() == 20);
        const auto rows = parse_csv(to_csv(r));
        REQUIRE(rows.size() == r.rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& a = rows[i];
            const auto& b = r.rows[i];
            CHECK(a.sharing == b.sharing);
            CHECK(std::memcmp(&a.ratio, &b.ratio, sizeof(double)) == 0);
            CHECK(std::memcmp(&a.analytic_se, &b.analytic_se, sizeof(double)) == 0);
            CHECK(std::memcmp(&a.mc_se, &b.mc_se, sizeof(double)) == 0);
            CHECK(std::memcmp(&a.mc_stderr, &b.mc_stderr, sizeof(double)) == 0);
            CHECK(a.trials == b.trials);
            CHECK(a.seed == b.seed);
        }
        CHECK_THROWS_AS(parse_csv("ratio,se\n1,2\n"), std::invalid_argument);
    }

    SUBCASE("analytic sweeps are byte-for-byte deterministic") {
        spec.grid = parse_grid("0:4:3");
        const std::string a = to_csv(run_sweep(spec));
        const std::string b = to_csv(run_sweep(spec));
        CHECK(a == b);
        spec.threads = 4;
        CHECK(to_csv(run_sweep(spec)) == a);
        CHECK(summary_json(run_sweep(spec)).dump() == summary_json(run_sweep(spec)).dump());
    }
}

TEST_CASE("bisection") {
    CHECK(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12) == approx(std::sqrt(2.0)));
    CHECK_THROWS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-9));
}
