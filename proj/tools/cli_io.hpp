#pragma once

#include "ckwork/scenario.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckw::cli {

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& msg)
        : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

enum class Preset { uo, oo, harmonic, drag, custom };

struct TimeGrid {
    double start = 0.0;  // omega*t (lambda*t for drag)
    double end = 10.0;
    int count = 1001;
    std::vector<double> values() const;
};

struct RunConfig {
    Preset preset = Preset::uo;
    Model model = Model::damped;
    DimensionlessParams dim;
    TimeGrid grid;
    std::set<std::string> engines{"classical", "proposed"};
    std::optional<double> mu;
    bool oracle = false;
    double oracle_tolerance = 1e-4;
    bool k2_as_printed = false;
    std::uint64_t seed = 20240501;
    std::string out = ".";
};

using KeyValues = std::map<std::string, std::string>;

// Flat `key = value` file; '#' starts a comment.
KeyValues read_config_file(const std::string& path);

// Later maps win.
KeyValues merge(const std::vector<KeyValues>& layers);

RunConfig resolve(const KeyValues& kv);

Preset parse_preset(const std::string& s);
std::string to_string(Preset p);
DimensionlessParams preset_params(Preset p);
Model preset_model(Preset p);

TimeGrid parse_grid(const std::string& s);

Scenario scenario_for(const RunConfig& c, bool want_quantum);

// ---- tables ---------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& t);
void write_csv_file(const std::string& path, const Table& t);
std::string format_number(double v);

// ---- commands -------------------------------------------------------------

struct Artifact {
    std::string csv_path;
    std::string meta_path;
    Table table;
};

std::vector<std::string> figure_ids();
// Figure-specific defaults layered beneath the user's settings.
KeyValues figure_defaults(const std::string& id);
Table figure_table(const std::string& id, const RunConfig& c);
Artifact run_figure(const std::string& id, const RunConfig& c);

Table simulate_table(const RunConfig& c);
Artifact run_simulate(const RunConfig& c);

struct SweepSpec {
    std::string param;
    double from = 0.0, to = 1.0;
    int count = 11;
};
SweepSpec parse_sweep(const std::string& param, const std::string& range);
Table sweep_table(const RunConfig& c, const SweepSpec& sw);
Artifact run_sweep(const RunConfig& c, const SweepSpec& sw);

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    bool skipped = false;
    std::string note;
};

struct OracleReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

struct OracleOptions {
    std::size_t mc_samples = 200000;
    bool run_cn = true;
    bool run_mc = true;
};

OracleReport oracle_check(const RunConfig& c, const OracleOptions& o = {});
std::string report_json(const OracleReport& r);

} // namespace ckw::cli
