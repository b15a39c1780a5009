#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace photmol::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct CommandOutput {
    std::string name;
    nlohmann::ordered_json summary;
    std::vector<std::pair<std::string, Table>> tables;
};

const std::vector<std::string>& command_names();

CommandOutput run_tc(const RunConfig& config);
CommandOutput run_tmatrix_scan(const RunConfig& config);
CommandOutput run_phase(const RunConfig& config);
CommandOutput run_gate(const RunConfig& config);
CommandOutput run_keldysh_check(const RunConfig& config);
CommandOutput run_molecule(const RunConfig& config);
CommandOutput run_command(const std::string& name, const RunConfig& config);

nlohmann::ordered_json config_json(const RunConfig& config);
std::string table_csv(const Table& table, const RunConfig& config);
nlohmann::ordered_json table_json(const Table& table, const RunConfig& config);

/// Writes <name>.json and one file per table into config.out_dir; returns the paths.
std::vector<std::string> write_outputs(const CommandOutput& output, const RunConfig& config);

}  // namespace photmol::cli
