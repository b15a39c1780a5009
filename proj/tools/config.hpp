#pragma once

// Run configuration: a flat `key = value` file whose keys carry their units.
// Command-line flags are applied on top of the file.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "photmol/boundstate.hpp"
#include "photmol/core_physics.hpp"
#include "photmol/keldysh.hpp"
#include "photmol/tmatrix.hpp"
#include "photmol/units.hpp"

namespace photmol::cli {

struct RunConfig {
    // waveguide
    double omega0_rad_per_s = 0.0;
    double v_e_m_per_s = 1e5;
    double v_over_ve = 4.0 * 3.14159265358979323846;  // v / v_e in rad (g = v_over_ve / 2 pi)
    bool attractive = true;
    double bandwidth_ghz = 40.0;  // Omega, with Delta = hbar Omega
    units::FrequencyConvention convention = units::FrequencyConvention::angular;
    double mu_rad_per_s = 0.0;
    double x_min = 1.0;

    // temperature used by tmatrix-scan and keldysh-check
    double temperature_kelvin = 0.05;

    // tc: denominator scan
    double scan_t_min_kelvin = 1e-3;
    double scan_t_max_kelvin = 10.0;
    std::size_t scan_points = 100;

    // tmatrix-scan: omega grid in units of Delta, offset by 2 mu
    double omega_min_over_delta = -0.5;
    double omega_max_over_delta = 0.5;
    std::size_t omega_points = 101;
    double eta_over_delta = 1e-8;

    // phase
    double phase_half_width_m = 1e-3;
    std::size_t phase_points = 2001;
    double sigma_m = 0.0;  // 0 selects 1e-3 of the span
    std::size_t grid_cells = 10000;
    double cfl = 1.0;

    // keldysh-check, frequencies in units of the Lorentzian width
    double keldysh_eta_rad_per_s = 1e8;
    double keldysh_epsilon_over_eta = 20.0;
    double keldysh_half_span_over_eta = 2000.0;
    std::size_t keldysh_points = 65537;

    // molecule
    double kappa_per_m = 1.0;
    double molecule_dx_m = 0.1;
    std::size_t molecule_points = 256;
    double k_com_per_m = 0.5;

    // output
    std::string out_dir = ".";
    std::string format = "csv";

    WaveguideParams waveguide() const;
    double delta() const;
    ThermalState thermal() const;
    UniformGrid phase_grid() const;
    double sigma() const;

    /// Resolved values in a fixed order, as strings that parse back exactly.
    std::vector<std::pair<std::string, std::string>> echo() const;
    /// Checks every physical field; throws InvalidArgument naming the key.
    void validate() const;
};

/// Applies `key = value` lines; `#` starts a comment. Unknown keys throw.
void apply_config_text(RunConfig& config, const std::string& text, const std::string& source = "<config>");
void apply_config_file(RunConfig& config, const std::string& path);
void set_value(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace photmol::cli
