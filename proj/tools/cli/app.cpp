#include "app.hpp"

#include <filesystem>
#include <iostream>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sbparity/errors.hpp"

namespace sbparity::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parity-sector ground states of the discretized spin-boson model", "sbparity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string config_path;
    CommonOptions common;
    std::string convention;
    std::string format = "csv";
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", common.out, "output directory")->capture_default_str();
    app.add_option("--workers", common.workers, "concurrent sweep points")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--convention", convention, "coupling convention")->check(CLI::IsMember({"mean-omega", "paper-quarter"}));
    app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    Fig1Options fig1;
    auto* fig1_cmd = app.add_subcommand("fig1", "beta2 versus chain length");
    fig1_cmd->add_option("--Lambda", fig1.Lambda, "discretization parameter")->capture_default_str();
    fig1_cmd->add_option("--omega-c", fig1.omega_c, "cutoff frequency")->capture_default_str();
    fig1_cmd->add_option("--s", fig1.s_list, "spectral exponents")->delimiter(',');
    fig1_cmd->add_option("--N-max", fig1.N_max, "largest N")->capture_default_str();
    fig1_cmd->add_flag("--svg", fig1.svg, "also write a minimal SVG plot");

    auto* sweep_cmd = app.add_subcommand("gap-sweep", "sector gap over a parameter sweep");
    auto* oracle_cmd = app.add_subcommand("oracle-check", "dense-oracle invariant suite");

    std::vector<int> modes;
    std::vector<int> n_max;
    auto* appendix_cmd = app.add_subcommand("verify-appendix", "exact non-degeneracy check");
    appendix_cmd->add_option("--modes", modes, "mode counts")->delimiter(',')->required();
    appendix_cmd->add_option("--n-max", n_max, "occupation cutoffs")->delimiter(',')->required();

    ScanOptions scan;
    std::string scan_mode = "theta";
    auto* scan_cmd = app.add_subcommand("magnetization-scan", "ground-state magnetization scan");
    scan_cmd->add_option("--mode", scan_mode, "theta or epsilon")->check(CLI::IsMember({"theta", "epsilon"}))->capture_default_str();
    scan_cmd->add_option("--steps", scan.steps, "grid points")->check(CLI::PositiveNumber)->capture_default_str();
    scan_cmd->add_option("--epsilon-max", scan.epsilon_max, "epsilon grid half-width")->capture_default_str();

    auto* disc_cmd = app.add_subcommand("discretize", "dump the discretized bath");

    std::vector<std::string> argv_storage{"sbparity"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        common.format = format == "json" ? Format::Json : Format::Csv;
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!convention.empty()) config.discretization.convention = *bath::parse_convention(convention);

        if (fig1_cmd->parsed()) return cmd_fig1(fig1, common, out);
        if (sweep_cmd->parsed()) return cmd_gap_sweep(config, common, out);
        if (oracle_cmd->parsed()) return cmd_oracle_check(config, common, out);
        if (appendix_cmd->parsed()) return cmd_verify_appendix(modes, n_max, common, out);
        if (scan_cmd->parsed()) {
            scan.mode = scan_mode == "epsilon" ? ScanMode::Epsilon : ScanMode::Theta;
            return cmd_magnetization_scan(config, scan, common, out);
        }
        if (disc_cmd->parsed()) return cmd_discretize(config, common, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitCapacityError;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << " (best residual " << e.best_residual() << ")\n";
        return kExitSolverFailure;
    } catch (const UnsupportedDecomposition& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << e.what() << "\n";
        return kExitInvariantFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvariantFailure;
    }
    return kExitConfigError;
}

}  // namespace sbparity::cli
