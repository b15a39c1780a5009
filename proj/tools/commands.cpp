#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "format.hpp"
#include "photmol/boundstate.hpp"
#include "photmol/errors.hpp"
#include "photmol/gate.hpp"
#include "photmol/keldysh.hpp"
#include "photmol/tmatrix.hpp"

namespace photmol::cli {

namespace {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const GateMatrix& g) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(complex_json(g(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json critical_json(const CriticalPoint& cp) {
    return json{{"method", to_string(cp.method)}, {"t_c_kelvin", cp.t_c_kelvin}, {"lambda_c", cp.lambda_c},
                {"g", cp.g},           {"x_min", cp.x_min},           {"residual", cp.residual}};
}

CommandOutput start(const std::string& name, const RunConfig& config) {
    config.validate();
    CommandOutput out;
    out.name = name;
    out.summary["command"] = name;
    out.summary["config"] = config_json(config);
    return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"tc", "tmatrix-scan", "phase", "gate", "keldysh-check", "molecule"};
    return names;
}

json config_json(const RunConfig& config) {
    json out = json::object();
    for (const auto& [key, value] : config.echo()) out[key] = value;
    return out;
}

CommandOutput run_tc(const RunConfig& config) {
    CommandOutput out = start("tc", config);
    const WaveguideParams params = config.waveguide();
    const CriticalPoint asym = critical_temperature(params, TcMethod::asymptotic, config.x_min);
    const CriticalPoint num = critical_temperature(params, TcMethod::numeric, config.x_min);
    out.summary["delta_rad_per_s"] = params.Delta;
    out.summary["asymptotic"] = critical_json(asym);
    out.summary["numeric"] = critical_json(num);
    out.summary["ratio_numeric_over_asymptotic"] = num.t_c_kelvin / asym.t_c_kelvin;
    out.summary["log_lambda_offset"] = std::log(num.lambda_c) - 1.0 / num.g;

    const TemperatureRange range{config.scan_t_min_kelvin, config.scan_t_max_kelvin, config.scan_points, true};
    const auto rows = denominator_scan(range, params, config.x_min);
    Table table;
    table.columns = {"t_kelvin", "lambda", "integral", "denominator", "tmatrix_re", "tmatrix_im", "near_pole",
                     "sign_change"};
    json changes = json::array();
    for (const auto& r : rows) {
        table.rows.push_back({r.t_kelvin, r.lambda, r.integral, r.denominator, r.tmatrix.real(), r.tmatrix.imag(),
                              r.near_pole ? 1.0 : 0.0, r.sign_change ? 1.0 : 0.0});
        if (r.sign_change) changes.push_back(r.t_kelvin);
    }
    out.summary["scan_sign_changes_at_kelvin"] = changes;
    out.tables.emplace_back("scan", std::move(table));
    return out;
}

CommandOutput run_tmatrix_scan(const RunConfig& config) {
    CommandOutput out = start("tmatrix-scan", config);
    const WaveguideParams params = config.waveguide();
    const ThermalState thermal = config.thermal();
    const double delta = params.Delta;

    TMatrixQuery q;
    q.params = params;
    q.thermal = thermal;
    q.x_min = config.x_min;
    q.validate();

    Table table;
    table.columns = {"omega_rad_per_s", "omega_over_delta", "tmatrix_re", "tmatrix_im", "denominator_re",
                     "denominator_im", "near_pole"};
    for (std::size_t i = 0; i < config.omega_points; ++i) {
        const double f = config.omega_points == 1 ? 0.0
                                                  : static_cast<double>(i) / static_cast<double>(config.omega_points - 1);
        const double w = config.omega_min_over_delta + f * (config.omega_max_over_delta - config.omega_min_over_delta);
        q.zeta = cplx(2.0 * thermal.mu + w * delta, config.eta_over_delta * delta);
        const TMatrixValue tv = tmatrix_retarded_1d(q);
        table.rows.push_back({q.zeta.real(), w, tv.value.real(), tv.value.imag(), tv.denominator.real(),
                              tv.denominator.imag(), tv.near_pole ? 1.0 : 0.0});
    }

    // the i eta limit at zeta = 2 mu against the coth-integral closed form
    q.zeta = cplx(2.0 * thermal.mu, config.eta_over_delta * delta);
    const TMatrixValue at_pole = tmatrix_retarded_1d(q);
    const double integral = coth_integral(config.x_min, q.lambda());
    const double strength = params.signed_coupling() / (2.0 * std::numbers::pi * params.v_e);
    const cplx closed = params.signed_coupling() / (1.0 + strength * integral);
    const double scale = std::abs(closed);
    out.summary["temperature_kelvin"] = config.temperature_kelvin;
    out.summary["lambda"] = q.lambda();
    out.summary["reduction_check"] = json{{"tmatrix", complex_json(at_pole.value)},
                                          {"closed_form", complex_json(closed)},
                                          {"coth_integral", integral},
                                          {"relative_difference", scale > 0.0 ? std::abs(at_pole.value - closed) / scale
                                                                              : std::abs(at_pole.value)}};
    out.tables.emplace_back("omega", std::move(table));
    return out;
}

CommandOutput run_phase(const RunConfig& config) {
    CommandOutput out = start("phase", config);
    const WaveguideParams params = config.waveguide();
    PhaseOptions opts;
    opts.omega0 = params.omega0;
    opts.grid_cells = config.grid_cells;
    opts.cfl = config.cfl;
    const PhaseResult r = propagate_pair(params.v, params.v_e, config.sigma(), config.phase_grid(), cplx(1.0, 0.0), opts);

    out.summary["theta"] = r.theta;
    out.summary["sign"] = r.sign;
    out.summary["theta_analytic"] = r.theta_analytic;
    out.summary["half_crossing_theta"] = r.half_crossing_theta;
    out.summary["amplitude_deviation"] = r.amplitude_deviation;
    out.summary["sigma_m"] = r.sigma;
    out.summary["dx_m"] = r.dx;
    out.summary["n_points"] = r.n_points;
    out.summary["t_total_s"] = r.t_total;
    out.summary["omega0_rad_per_s"] = r.omega0;
    out.summary["theta_lab"] = r.theta_lab;
    out.summary["grid_solve"] = json{{"cells", r.grid.cells},
                                     {"cfl", r.grid.cfl},
                                     {"dx_m", r.grid.dx},
                                     {"dt_s", r.grid.dt},
                                     {"steps", r.grid.steps},
                                     {"theta", r.grid.theta},
                                     {"theta_error", std::abs(r.grid.theta - r.theta)},
                                     {"amplitude_deviation", r.grid.amplitude_deviation},
                                     {"complex_error", r.grid.complex_error},
                                     {"lab_frame_offset", r.grid.lab_frame_offset}};

    Table table;
    table.columns = {"xi_m", "phase", "phi_re", "phi_im"};
    for (std::size_t i = 0; i < r.xi.size(); ++i) {
        table.rows.push_back({r.xi[i], r.phase[i], r.phi[i].real(), r.phi[i].imag()});
    }
    out.tables.emplace_back("profile", std::move(table));
    return out;
}

CommandOutput run_gate(const RunConfig& config) {
    CommandOutput out = start("gate", config);
    const WaveguideParams params = config.waveguide();
    const double theta = nonlinear_phase(params.v, params.v_e);
    const GateMatrix cz = cz_from_phase(theta);

    json labels = json::array();
    for (const auto& l : basis_labels()) labels.push_back(l);
    json table = json::array();
    for (const auto& row : truth_table(cz)) {
        json image = json::array();
        for (Eigen::Index k = 0; k < row.output.size(); ++k) image.push_back(complex_json(row.output(k)));
        table.push_back(json{{"input", row.input}, {"output", image}});
    }
    out.summary["basis_order"] = labels;
    out.summary["theta"] = theta;
    out.summary["matrix"] = matrix_json(cz);
    out.summary["truth_table"] = table;
    out.summary["unitarity_deviation"] = unitarity_deviation(cz);
    out.summary["cnot_from_cz_deviation"] = max_abs_deviation(cnot_from_cz(), cnot_reference());
    return out;
}

CommandOutput run_keldysh_check(const RunConfig& config) {
    CommandOutput out = start("keldysh-check", config);
    const ThermalState thermal = config.thermal();
    const double eta = config.keldysh_eta_rad_per_s;
    const double eps = thermal.mu + config.keldysh_epsilon_over_eta * eta;
    const double half = config.keldysh_half_span_over_eta * eta;
    const GridSpec grid{eps - half, eps + half, config.keldysh_points};

    const SpectralGrid spectral = lorentzian_spectral(eps, eta, grid);
    const FdtComponents fdt = fdt_components(spectral, thermal, 1, PoleMask::zero);
    double fdt_residual = 0.0;
    double spectral_residual = 0.0;
    double peak = 0.0;
    for (const auto& a : spectral.values) peak = std::max(peak, std::abs(a));
    for (std::size_t i = 0; i < spectral.size(); ++i) {
        const cplx lesser = fdt.lesser.values[i];
        const cplx greater = fdt.greater.values[i];
        spectral_residual = std::max(spectral_residual, std::abs(cplx(0, 1) * (greater - lesser) - spectral.values[i]) / peak);
        if (lesser == 0.0) continue;
        const double expected = std::exp(thermal.beta * (spectral.omega(i) - thermal.mu));
        fdt_residual = std::max(fdt_residual, std::abs(greater / lesser - expected) / expected);
    }

    const SpectralGrid retarded = retarded_from_spectral(spectral, 0.0);
    double hilbert = 0.0;
    for (std::size_t i = 0; i < retarded.size(); ++i) {
        const double d = retarded.omega(i) - eps;
        if (std::abs(d) <= 5.0 * eta || std::abs(d) > 0.5 * half) continue;
        const cplx exact = 1.0 / cplx(d, eta);
        hilbert = std::max(hilbert, std::abs(retarded.values[i] - exact) / std::abs(exact));
    }
    const TimeSeries series = time_domain_retarded(retarded);

    out.summary["temperature_kelvin"] = config.temperature_kelvin;
    out.summary["grid"] = json{{"omega_min", grid.omega_min}, {"omega_max", grid.omega_max}, {"n_points", grid.n_points}};
    out.summary["spectral_weight"] = spectral_weight(spectral);
    out.summary["masked_bins"] = fdt.masked.size();
    out.summary["fdt_ratio_residual"] = fdt_residual;
    out.summary["spectral_identity_residual"] = spectral_residual;
    out.summary["hilbert_relative_error"] = hilbert;
    out.summary["hilbert_window"] = "5 eta < |omega - epsilon| <= half_span / 2";
    out.summary["causality_leakage"] = series.causality_violation;
    out.summary["tolerances"] = json{{"fdt_ratio_residual", 1e-12}, {"hilbert_relative_error", 1e-3},
                                     {"causality_leakage", 1e-4}};
    out.summary["pass"] = fdt_residual < 1e-12 && hilbert < 1e-3 && series.causality_violation < 1e-4;
    return out;
}

CommandOutput run_molecule(const RunConfig& config) {
    CommandOutput out = start("molecule", config);
    const UniformGrid grid = UniformGrid::centered(config.molecule_points, config.molecule_dx_m);
    PairAmplitude chi = chi_delta_bound(config.kappa_per_m, grid);
    chi.K = config.k_com_per_m;
    const MomentumAmplitude mom = momentum_amplitudes(chi);
    const Field2D direct = molecule_wavefunction(chi, chi.K, grid, grid);
    const Field2D summed = molecule_wavefunction_momentum(chi, chi.K, grid, grid);
    double deviation = 0.0;
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
        deviation = std::max(deviation, std::abs(direct.values[i] - summed.values[i]));
    }
    out.summary["box_length_m"] = chi.box_length();
    out.summary["chi_norm"] = chi.norm();
    out.summary["parseval_sum"] = mom.norm();
    out.summary["field_norm"] = direct.norm();
    out.summary["direct_vs_momentum_max_deviation"] = deviation;

    Table table;
    table.columns = {"x_m", "re", "im"};
    for (std::size_t i = 0; i < grid.n; ++i) table.rows.push_back({grid.x(i), chi.values[i].real(), chi.values[i].imag()});
    out.tables.emplace_back("chi", std::move(table));
    Table ktable;
    ktable.columns = {"k_per_m", "re", "im", "density", "continuum_density"};
    for (std::size_t q = 0; q < mom.k.size(); ++q) {
        ktable.rows.push_back({mom.k[q], mom.values[q].real(), mom.values[q].imag(), std::norm(mom.values[q]),
                               chi_momentum_density(config.kappa_per_m, mom.k[q], mom.box_length)});
    }
    out.tables.emplace_back("chi_momentum", std::move(ktable));
    return out;
}

CommandOutput run_command(const std::string& name, const RunConfig& config) {
    if (name == "tc") return run_tc(config);
    if (name == "tmatrix-scan") return run_tmatrix_scan(config);
    if (name == "phase") return run_phase(config);
    if (name == "gate") return run_gate(config);
    if (name == "keldysh-check") return run_keldysh_check(config);
    if (name == "molecule") return run_molecule(config);
    throw InvalidArgument("unknown command '" + name + "'");
}

std::string table_csv(const Table& table, const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [key, value] : config.echo()) out << "# " << key << " = " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << round_trip(row[c]);
        out << '\n';
    }
    return out.str();
}

json table_json(const Table& table, const RunConfig& config) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) r[table.columns[c]] = row[c];
        rows.push_back(r);
    }
    return json{{"config", config_json(config)}, {"columns", table.columns}, {"rows", rows}};
}

std::vector<std::string> write_outputs(const CommandOutput& output, const RunConfig& config) {
    namespace fs = std::filesystem;
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("io_error", "cannot create output directory '" + config.out_dir + "': " + ec.message());

    std::vector<std::string> paths;
    auto write = [&](const fs::path& path, const std::string& body) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("io_error", "cannot write '" + path.string() + "'");
        f << body;
        paths.push_back(path.string());
    };
    write(dir / (output.name + ".json"), output.summary.dump(2) + "\n");
    for (const auto& [suffix, table] : output.tables) {
        const std::string stem = output.name + "_" + suffix;
        if (config.format == "json") write(dir / (stem + ".json"), table_json(table, config).dump(2) + "\n");
        else write(dir / (stem + ".csv"), table_csv(table, config));
    }
    return paths;
}

}  // namespace photmol::cli
