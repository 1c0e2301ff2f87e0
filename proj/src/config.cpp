#include "leoshare/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "leoshare/units.hpp"

namespace leoshare {

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "field '" + field +
                         "': " + message),
      line_(line),
      field_(std::move(field)) {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

class Document {
public:
    explicit Document(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        std::string section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            const auto hash = raw.find_first_of("#;");
            std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') throw ConfigError(line_no, line, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) throw ConfigError(line_no, line, "empty section name");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError(line_no, line, "expected 'key = value'");
            if (section.empty()) throw ConfigError(line_no, trim(line.substr(0, eq)), "key outside of any section");
            const std::string key = section + "." + trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (value.empty()) throw ConfigError(line_no, key, "missing value");
            if (entries_.count(key)) throw ConfigError(line_no, key, "duplicate field");
            entries_[key] = {value, line_no, false};
        }
    }

    const Entry* find(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    const Entry& require(const std::string& key) {
        const Entry* e = find(key);
        if (!e) throw ConfigError(0, key, "required field is missing");
        return *e;
    }

    double number(const std::string& key) {
        const Entry& e = require(key);
        return to_number(e, key);
    }

    double number_or(const std::string& key, double fallback) {
        const Entry* e = find(key);
        return e ? to_number(*e, key) : fallback;
    }

    int integer(const std::string& key) {
        const Entry& e = require(key);
        const double v = to_number(e, key);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(e.line, key, "must be an integer");
        return static_cast<int>(v);
    }

    std::string text(const std::string& key) { return require(key).value; }

    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    void reject_unused() const {
        for (const auto& [key, e] : entries_) {
            if (!e.used) throw ConfigError(e.line, key, "unknown field");
        }
    }

private:
    static double to_number(const Entry& e, const std::string& key) {
        try {
            return parse_number(e.value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e.line, key, ex.what());
        }
    }

    std::map<std::string, Entry> entries_;
};

const char* kVsatPreset = R"(# VSAT terminals
[satellite]
terminal = vsat
carrier_ghz = 28
bandwidth_mhz = 50
power_dbm = 43
user_power_dbm = 35.05
main_gain_dbi = 44.5
side_gain_dbi = 31.5
user_main_gain_dbi = 34.2
user_side_gain_dbi = 21.2
earth_radius_km = 6378
altitude_km = 530
user_altitude_m = 1.5
visibility_angle_deg = 57
elevation_angle_deg = 0
path_loss_exponent = 2
noise_density_dbm_hz = -174

[terrestrial]
bs_power_dbm = 46
user_power_dbm = 23
bs_main_gain_dbi = 16
bs_high_side_gain_dbi = 4
bs_low_side_gain_dbi = -12
user_main_gain_dbi = 0
user_side_gain_dbi = 0
psi1_deg = 10
psi2_deg = 40
bs_altitude_m = 35
user_altitude_m = 1.5
path_loss_exponent = 4
ut_disk_radius_m = 500
ut_inner_radius_m = 7

[fading]
sr_m = 1
sr_b = 0.063
sr_omega = 8.97e-4
nakagami_m = 1

# per square kilometre
[densities]
satellite = 1e-6
satellite_user = 10^-5.5
bs_uplink = 1e-6
bs_downlink = 1
ratio = 100

[sweep]
sharing = ul-dl, ul-ul, dl-dl, dl-ul
grid = 0:4:9
mc_log10_ratios = 1, 2, 3
trials = 0
seed = 1
)";

const char* kHandheldPreset = R"(# Handheld terminals
[satellite]
terminal = handheld
carrier_ghz = 1.99
bandwidth_mhz = 5
power_dbm = 43
user_power_dbm = 23
main_gain_dbi = 50
side_gain_dbi = 30
user_main_gain_dbi = 0
user_side_gain_dbi = 0
earth_radius_km = 6378
altitude_km = 530
user_altitude_m = 1.5
visibility_angle_deg = 57
elevation_angle_deg = 0
path_loss_exponent = 2
noise_density_dbm_hz = -174

[terrestrial]
bs_power_dbm = 46
user_power_dbm = 23
bs_main_gain_dbi = 16
bs_high_side_gain_dbi = 4
bs_low_side_gain_dbi = -12
user_main_gain_dbi = 0
user_side_gain_dbi = 0
psi1_deg = 10
psi2_deg = 40
bs_altitude_m = 35
user_altitude_m = 1.5
path_loss_exponent = 4
ut_disk_radius_m = 500
ut_inner_radius_m = 7

[fading]
sr_m = 1
sr_b = 0.063
sr_omega = 8.97e-4
nakagami_m = 1

# per square kilometre
[densities]
satellite = 1e-6
satellite_user = 10^-4.5
bs_uplink = 1e-6
bs_downlink = 1
ratio = 100

[sweep]
sharing = ul-dl, ul-ul, dl-dl, dl-ul
grid = 0:4:9
mc_log10_ratios = 1, 2, 3
trials = 0
seed = 1
)";

}  // namespace

double parse_number(const std::string& raw) {
    const std::string text = trim(raw);
    const auto caret = text.find('^');
    if (caret == std::string::npos) return parse_plain(text);
    const double base = parse_plain(trim(text.substr(0, caret)));
    const double exponent = parse_plain(trim(text.substr(caret + 1)));
    return std::pow(base, exponent);
}

std::vector<double> GridSpec::log10_values() const {
    std::vector<double> out;
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
    return out;
}

GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw std::invalid_argument("grid must look like lo:hi:n, got '" + text + "'");
    GridSpec g;
    g.lo = parse_number(parts[0]);
    g.hi = parse_number(parts[1]);
    const double n = parse_number(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 100000) throw std::invalid_argument("grid point count must be a positive integer");
    g.points = static_cast<int>(n);
    if (!(g.lo <= g.hi)) throw std::invalid_argument("grid must satisfy lo <= hi");
    if (g.points > 1 && g.lo == g.hi) throw std::invalid_argument("grid with several points needs lo < hi");
    return g;
}

ScenarioFile parse_scenario(const std::string& text, const std::string& name) {
    Document doc(text);
    ScenarioFile f;
    f.name = name;
    ScenarioConfig& c = f.base;

    const std::string terminal = doc.text("satellite.terminal");
    if (terminal == "vsat") {
        c.terminal = TerminalClass::Vsat;
    } else if (terminal == "handheld") {
        c.terminal = TerminalClass::Handheld;
    } else {
        throw ConfigError(doc.line_of("satellite.terminal"), "satellite.terminal", "expected vsat or handheld");
    }

    const double earth = doc.number("satellite.earth_radius_km") * 1e3;
    NetworkGeometry& g = c.geometry;
    g.satellite_radius = earth + doc.number("satellite.altitude_km") * 1e3;
    g.satellite_user_radius = earth + doc.number("satellite.user_altitude_m");
    g.bs_radius = earth + doc.number("terrestrial.bs_altitude_m");
    g.terrestrial_user_radius = earth + doc.number("terrestrial.user_altitude_m");
    g.visibility_angle = deg_to_rad(doc.number("satellite.visibility_angle_deg"));
    g.elevation_angle = deg_to_rad(doc.number("satellite.elevation_angle_deg"));
    g.psi1_threshold = deg_to_rad(doc.number("terrestrial.psi1_deg"));
    g.psi2_threshold = deg_to_rad(doc.number("terrestrial.psi2_deg"));
    g.ut_disk_radius = doc.number("terrestrial.ut_disk_radius_m");
    c.ut_inner_radius = doc.number_or("terrestrial.ut_inner_radius_m", 7.0);

    GainProfile& gp = c.gains;
    gp.carrier_hz = doc.number("satellite.carrier_ghz") * 1e9;
    gp.satellite = {db_to_linear(doc.number("satellite.main_gain_dbi")),
                    db_to_linear(doc.number("satellite.side_gain_dbi"))};
    gp.satellite_user = {db_to_linear(doc.number("satellite.user_main_gain_dbi")),
                         db_to_linear(doc.number("satellite.user_side_gain_dbi"))};
    gp.bs.main = db_to_linear(doc.number("terrestrial.bs_main_gain_dbi"));
    gp.bs_high_side = db_to_linear(doc.number("terrestrial.bs_high_side_gain_dbi"));
    gp.bs_low_side = db_to_linear(doc.number("terrestrial.bs_low_side_gain_dbi"));
    gp.bs.side = gp.bs_high_side;
    gp.terrestrial_user = {db_to_linear(doc.number("terrestrial.user_main_gain_dbi")),
                           db_to_linear(doc.number("terrestrial.user_side_gain_dbi"))};

    c.p_s = dbm_to_watts(doc.number("satellite.power_dbm"));
    c.p_us = dbm_to_watts(doc.number("satellite.user_power_dbm"));
    c.p_b = dbm_to_watts(doc.number("terrestrial.bs_power_dbm"));
    c.p_ut = dbm_to_watts(doc.number("terrestrial.user_power_dbm"));
    c.alpha_s = doc.number("satellite.path_loss_exponent");
    c.alpha_t = doc.number("terrestrial.path_loss_exponent");
    const double bandwidth = doc.number("satellite.bandwidth_mhz") * 1e6;
    if (!(bandwidth > 0.0)) {
        throw ConfigError(doc.line_of("satellite.bandwidth_mhz"), "satellite.bandwidth_mhz", "must be positive");
    }
    c.noise_power = noise_power_watts(doc.number("satellite.noise_density_dbm_hz"), bandwidth);

    const int sr_m = doc.integer("fading.sr_m");
    const double sr_b = doc.number("fading.sr_b");
    const double sr_omega = doc.number("fading.sr_omega");
    try {
        c.sr = ShadowedRicianParams(sr_m, sr_b, sr_omega);
    } catch (const std::domain_error& e) {
        throw ConfigError(doc.line_of("fading.sr_m"), "fading", e.what());
    }
    const int mt = doc.integer("fading.nakagami_m");
    if (mt < 1) throw ConfigError(doc.line_of("fading.nakagami_m"), "fading.nakagami_m", "must be a positive integer");
    c.nakagami = NakagamiParams(mt);

    c.lambda_s = per_km2_to_per_m2(doc.number("densities.satellite"));
    c.lambda_us = per_km2_to_per_m2(doc.number("densities.satellite_user"));
    f.lambda_b_uplink = per_km2_to_per_m2(doc.number("densities.bs_uplink"));
    f.lambda_b_downlink = per_km2_to_per_m2(doc.number("densities.bs_downlink"));
    f.ratio = doc.number_or("densities.ratio", 1.0);
    c.lambda_b = f.lambda_b_uplink;
    c.lambda_ut = f.ratio * c.lambda_b;

    if (const Entry* e = doc.find("sweep.sharing")) {
        f.sharings.clear();
        for (const auto& item : split_list(e->value)) {
            try {
                f.sharings.push_back(parse_sharing(item));
            } catch (const std::invalid_argument& ex) {
                throw ConfigError(e->line, "sweep.sharing", ex.what());
            }
        }
        if (f.sharings.empty()) throw ConfigError(e->line, "sweep.sharing", "empty list");
    }
    if (const Entry* e = doc.find("sweep.grid")) {
        try {
            f.grid = parse_grid(e->value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, "sweep.grid", ex.what());
        }
    }
    if (const Entry* e = doc.find("sweep.mc_log10_ratios")) {
        f.mc_log10_ratios.clear();
        try {
            for (const auto& item : split_list(e->value)) f.mc_log10_ratios.push_back(parse_number(item));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, "sweep.mc_log10_ratios", ex.what());
        }
    }
    const double trials = doc.number_or("sweep.trials", 0.0);
    if (trials < 0 || trials != std::floor(trials)) {
        throw ConfigError(doc.line_of("sweep.trials"), "sweep.trials", "must be a non-negative integer");
    }
    f.trials = static_cast<long long>(trials);
    const double seed = doc.number_or("sweep.seed", 1.0);
    if (seed < 0 || seed != std::floor(seed) || seed >= 1.8e19) {
        throw ConfigError(doc.line_of("sweep.seed"), "sweep.seed", "must be a non-negative integer");
    }
    f.seed = static_cast<std::uint64_t>(seed);

    doc.reject_unused();
    return f;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, path.string(), "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.stem().string());
}

std::string preset_text(const std::string& name) {
    if (name == "vsat") return kVsatPreset;
    if (name == "handheld") return kHandheldPreset;
    throw std::invalid_argument("unknown preset '" + name + "' (expected vsat or handheld)");
}

ScenarioFile load_preset(const std::string& name) {
    return parse_scenario(preset_text(name), name);
}

std::vector<std::string> preset_names() {
    return {"vsat", "handheld"};
}

ScenarioConfig make_scenario(const ScenarioFile& file, Sharing sharing, double ratio) {
    ScenarioConfig c = file.base;
    c.sharing = sharing;
    c.lambda_b = is_uplink(sharing) ? file.lambda_b_uplink : file.lambda_b_downlink;
    c.lambda_ut = ratio * c.lambda_b;
    return c;
}

}  // namespace leoshare
