#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "format.hpp"
#include "photmol/errors.hpp"

namespace {

int fail(const std::string& code, const std::string& message, int status) {
    nlohmann::ordered_json err{{"error", code}, {"message", message}};
    std::cerr << err.dump() << '\n';
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace photmol::cli;

    CLI::App app{"Photon-molecule formation in 1D waveguides: T-matrix, critical temperature, nonlinear phase, gates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "photmol 0.1.0");

    std::string config_path;
    std::optional<double> x_min, v_over_ve, omega_ghz;
    std::optional<std::string> out_dir, format;
    bool angular = false, ordinary = false;

    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("--x-min", x_min, "infrared cutoff in x = beta epsilon / 2");
    app.add_option("--v-over-ve", v_over_ve, "coupling v / v_e");
    app.add_option("--omega-ghz", omega_ghz, "interaction bandwidth Omega in GHz");
    auto* ang = app.add_flag("--angular", angular, "read GHz values as angular frequency (default)");
    auto* ord = app.add_flag("--ordinary", ordinary, "read GHz values as ordinary frequency (times 2 pi)");
    ang->excludes(ord);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));

    const std::map<std::string, std::string> descriptions{
        {"tc", "critical temperature (asymptotic and numeric) and the D(T) scan"},
        {"tmatrix-scan", "retarded T-matrix over omega at the configured temperature"},
        {"phase", "nonlinear phase of a counter-propagating pair, with the grid cross-check"},
        {"gate", "controlled-Z gate, truth table and CNOT construction"},
        {"keldysh-check", "FDT, Hilbert and causality residuals for a Lorentzian"},
        {"molecule", "bound-state wavefunction, momentum amplitudes and the product field"},
    };
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name, descriptions.at(name));
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        RunConfig config;
        if (!config_path.empty()) apply_config_file(config, config_path);
        if (x_min) config.x_min = *x_min;
        if (v_over_ve) config.v_over_ve = *v_over_ve;
        if (omega_ghz) config.bandwidth_ghz = *omega_ghz;
        if (angular) config.convention = photmol::units::FrequencyConvention::angular;
        if (ordinary) config.convention = photmol::units::FrequencyConvention::ordinary;
        if (out_dir) config.out_dir = *out_dir;
        if (format) config.format = *format;

        const std::string command = app.get_subcommands().front()->get_name();
        const CommandOutput output = run_command(command, config);
        const auto paths = write_outputs(output, config);
        nlohmann::ordered_json report = output.summary;
        report["files"] = paths;
        std::cout << report.dump(2) << '\n';
        return 0;
    } catch (const photmol::QuadratureError& e) {
        nlohmann::ordered_json err{{"error", e.code()},
                                   {"message", e.what()},
                                   {"achieved", e.achieved()},
                                   {"requested", e.requested()}};
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const photmol::Error& e) {
        return fail(e.code(), e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
