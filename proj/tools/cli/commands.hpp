#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace sbparity::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvariantFailure = 1,
    kExitConfigError = 2,
    kExitCapacityError = 3,
    kExitSolverFailure = 4,
};

struct CommonOptions {
    std::filesystem::path out = "out";
    int workers = 1;
    Format format = Format::Csv;
};

// fig1 ----------------------------------------------------------------------

struct Fig1Options {
    double Lambda = 2.0;
    double omega_c = 1.0;
    std::vector<double> s_list = {0.1, 1.0};
    int N_max = 40;
    bool svg = false;
};

/// Columns: N, beta2_s<label> for each requested s.
Table fig1_table(const Fig1Options& options);
std::string fig1_plot_script(const Fig1Options& options, const std::string& data_file);
/// Minimal standalone SVG line plot of every non-index column against column 0.
std::string svg_line_plot(const Table& table, const std::string& title);
int cmd_fig1(const Fig1Options& options, const CommonOptions& common, std::ostream& log);

// gap-sweep -----------------------------------------------------------------

struct ResultRow {
    RunConfig config;
    double E_plus0 = 0.0;
    double E_minus0 = 0.0;
    double gap = 0.0;
    double prefactor = 0.0;
    double sum_q_squared = 0.0;
    std::string ground_parity;  ///< "+1" when the even sector is lower, "-1" when the odd one is
    double residual_plus = 0.0;
    double residual_minus = 0.0;
    double wall_time = 0.0;     ///< seconds; reported in the manifest only
    std::string status = "ok";
};

ResultRow evaluate_point(const RunConfig& config);
/// One row per sweep point, in sweep order regardless of `workers`.
std::vector<ResultRow> run_gap_sweep(const RunConfig& config, int workers);
Table result_table(const std::vector<ResultRow>& rows);
int cmd_gap_sweep(const RunConfig& config, const CommonOptions& common, std::ostream& log);

// oracle-check --------------------------------------------------------------

struct CheckResult {
    std::string name;
    double value = 0.0;
    std::string criterion;
    bool pass = false;
};

struct OracleCheckReport {
    double epsilon = 0.0;
    std::vector<CheckResult> checks;
    std::string ground_parity;
    bool parity_broken = false;
    double sector_ground_deviation = 0.0;  ///< informational: truncations differ

    bool all_pass() const;
    std::string to_text() const;
    nlohmann::json to_json() const;
};

/// Throws CapacityError when the enumeration exceeds the dense cap.
OracleCheckReport run_oracle_check(const RunConfig& config);
int cmd_oracle_check(const RunConfig& config, const CommonOptions& common, std::ostream& log);

// verify-appendix -----------------------------------------------------------

int cmd_verify_appendix(const std::vector<int>& modes, const std::vector<int>& n_max,
                        const CommonOptions& common, std::ostream& log);

// magnetization-scan --------------------------------------------------------

enum class ScanMode { Theta, Epsilon };

struct ScanOptions {
    ScanMode mode = ScanMode::Theta;
    int steps = 9;
    double epsilon_max = 0.5;
};

/// Theta mode: theta, magnetization, overlap on [0, pi/2] from the sector
/// ground states (epsilon forced to 0). Epsilon mode: epsilon,
/// magnetization, parity_expectation from the dense ground state on a grid
/// symmetric about zero.
Table magnetization_table(const RunConfig& config, const ScanOptions& options);
int cmd_magnetization_scan(const RunConfig& config, const ScanOptions& options, const CommonOptions& common,
                           std::ostream& log);

// discretize ----------------------------------------------------------------

Table discretize_table(const RunConfig& config);
int cmd_discretize(const RunConfig& config, const CommonOptions& common, std::ostream& log);

}  // namespace sbparity::cli
