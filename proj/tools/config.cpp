#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "format.hpp"
#include "photmol/errors.hpp"

namespace photmol::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
        throw InvalidArgument(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    unsigned long long v = 0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
        throw InvalidArgument(key + ": expected a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw InvalidArgument(key + ": expected true or false, got '" + text + "'");
}

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

Field real(const char* key, double RunConfig::*member) {
    return {key, [member](const RunConfig& c) { return round_trip(c.*member); },
            [key, member](RunConfig& c, const std::string& v) { c.*member = parse_double(key, v); }};
}

Field count(const char* key, std::size_t RunConfig::*member) {
    return {key, [member](const RunConfig& c) { return std::to_string(c.*member); },
            [key, member](RunConfig& c, const std::string& v) { c.*member = parse_count(key, v); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> all = {
        real("omega0_rad_per_s", &RunConfig::omega0_rad_per_s),
        real("v_e_m_per_s", &RunConfig::v_e_m_per_s),
        real("v_over_ve", &RunConfig::v_over_ve),
        {"attractive", [](const RunConfig& c) { return std::string(c.attractive ? "true" : "false"); },
         [](RunConfig& c, const std::string& v) { c.attractive = parse_bool("attractive", v); }},
        real("bandwidth_ghz", &RunConfig::bandwidth_ghz),
        {"frequency_convention",
         [](const RunConfig& c) {
             return std::string(c.convention == units::FrequencyConvention::angular ? "angular" : "ordinary");
         },
         [](RunConfig& c, const std::string& v) {
             if (v == "angular") c.convention = units::FrequencyConvention::angular;
             else if (v == "ordinary") c.convention = units::FrequencyConvention::ordinary;
             else throw InvalidArgument("frequency_convention: expected angular or ordinary, got '" + v + "'");
         }},
        real("mu_rad_per_s", &RunConfig::mu_rad_per_s),
        real("x_min", &RunConfig::x_min),
        real("temperature_kelvin", &RunConfig::temperature_kelvin),
        real("scan_t_min_kelvin", &RunConfig::scan_t_min_kelvin),
        real("scan_t_max_kelvin", &RunConfig::scan_t_max_kelvin),
        count("scan_points", &RunConfig::scan_points),
        real("omega_min_over_delta", &RunConfig::omega_min_over_delta),
        real("omega_max_over_delta", &RunConfig::omega_max_over_delta),
        count("omega_points", &RunConfig::omega_points),
        real("eta_over_delta", &RunConfig::eta_over_delta),
        real("phase_half_width_m", &RunConfig::phase_half_width_m),
        count("phase_points", &RunConfig::phase_points),
        real("sigma_m", &RunConfig::sigma_m),
        count("grid_cells", &RunConfig::grid_cells),
        real("cfl", &RunConfig::cfl),
        real("keldysh_eta_rad_per_s", &RunConfig::keldysh_eta_rad_per_s),
        real("keldysh_epsilon_over_eta", &RunConfig::keldysh_epsilon_over_eta),
        real("keldysh_half_span_over_eta", &RunConfig::keldysh_half_span_over_eta),
        count("keldysh_points", &RunConfig::keldysh_points),
        real("kappa_per_m", &RunConfig::kappa_per_m),
        real("molecule_dx_m", &RunConfig::molecule_dx_m),
        count("molecule_points", &RunConfig::molecule_points),
        real("k_com_per_m", &RunConfig::k_com_per_m),
        {"out_dir", [](const RunConfig& c) { return c.out_dir; },
         [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
        {"format", [](const RunConfig& c) { return c.format; },
         [](RunConfig& c, const std::string& v) {
             if (v != "csv" && v != "json") throw InvalidArgument("format: expected csv or json, got '" + v + "'");
             c.format = v;
         }},
    };
    return all;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw InvalidArgument(key + ": " + what);
}

}  // namespace

WaveguideParams RunConfig::waveguide() const {
    WaveguideParams p;
    p.omega0 = omega0_rad_per_s;
    p.v_e = v_e_m_per_s;
    p.v = v_over_ve * v_e_m_per_s;
    p.attractive = attractive;
    p.Delta = delta();
    p.mu = mu_rad_per_s;
    return p;
}

double RunConfig::delta() const { return units::rad_per_s_from_ghz(bandwidth_ghz, convention); }

ThermalState RunConfig::thermal() const { return ThermalState::from_kelvin(temperature_kelvin, mu_rad_per_s); }

UniformGrid RunConfig::phase_grid() const {
    return UniformGrid::spanning(-phase_half_width_m, phase_half_width_m, phase_points);
}

double RunConfig::sigma() const { return sigma_m > 0.0 ? sigma_m : 1e-3 * 2.0 * phase_half_width_m; }

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) out.emplace_back(f.key, f.get(*this));
    return out;
}

void RunConfig::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(omega0_rad_per_s) && omega0_rad_per_s >= 0.0, "omega0_rad_per_s", "must be finite and >= 0");
    require(finite(v_e_m_per_s) && v_e_m_per_s > 0.0, "v_e_m_per_s", "must be positive");
    require(finite(v_over_ve) && v_over_ve >= 0.0, "v_over_ve", "must be finite and >= 0");
    require(finite(bandwidth_ghz) && bandwidth_ghz > 0.0, "bandwidth_ghz", "must be positive");
    require(finite(mu_rad_per_s), "mu_rad_per_s", "must be finite");
    require(finite(x_min) && x_min > 0.0, "x_min", "must be positive");
    require(finite(temperature_kelvin) && temperature_kelvin > 0.0, "temperature_kelvin", "must be positive");
    require(scan_t_min_kelvin > 0.0 && scan_t_max_kelvin >= scan_t_min_kelvin && finite(scan_t_max_kelvin),
            "scan_t_min_kelvin", "scan range must be positive and ascending");
    require(scan_points >= 1, "scan_points", "must be at least 1");
    require(finite(omega_min_over_delta) && finite(omega_max_over_delta) && omega_max_over_delta >= omega_min_over_delta,
            "omega_min_over_delta", "omega range must be ascending");
    require(omega_points >= 1, "omega_points", "must be at least 1");
    require(finite(eta_over_delta) && eta_over_delta > 0.0, "eta_over_delta", "must be positive");
    require(finite(phase_half_width_m) && phase_half_width_m > 0.0, "phase_half_width_m", "must be positive");
    require(phase_points >= 2, "phase_points", "must be at least 2");
    require(finite(sigma_m) && sigma_m >= 0.0, "sigma_m", "must be >= 0");
    require(cfl > 0.0 && cfl <= 1.0, "cfl", "must lie in (0, 1]");
    require(finite(keldysh_eta_rad_per_s) && keldysh_eta_rad_per_s > 0.0, "keldysh_eta_rad_per_s", "must be positive");
    require(finite(keldysh_epsilon_over_eta), "keldysh_epsilon_over_eta", "must be finite");
    require(finite(keldysh_half_span_over_eta) && keldysh_half_span_over_eta > 0.0, "keldysh_half_span_over_eta",
            "must be positive");
    require(keldysh_points >= 16, "keldysh_points", "must be at least 16");
    require(finite(kappa_per_m) && kappa_per_m > 0.0, "kappa_per_m", "must be positive");
    require(finite(molecule_dx_m) && molecule_dx_m > 0.0, "molecule_dx_m", "must be positive");
    require(molecule_points >= 2 && molecule_points <= 4096, "molecule_points", "must lie in [2, 4096]");
    require(finite(k_com_per_m), "k_com_per_m", "must be finite");
    waveguide().validate();
}

void set_value(RunConfig& config, const std::string& key, const std::string& value) {
    for (const auto& f : fields()) {
        if (key == f.key) {
            f.set(config, value);
            return;
        }
    }
    throw InvalidArgument("unknown config key '" + key + "'");
}

void apply_config_text(RunConfig& config, const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(source + ":" + std::to_string(number) + ": expected key = value");
        }
        set_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(config, text.str(), path);
}

}  // namespace photmol::cli
