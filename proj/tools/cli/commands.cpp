#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "sbparity/appendix.hpp"
#include "sbparity/bath.hpp"
#include "sbparity/errors.hpp"
#include "sbparity/fockspace.hpp"
#include "sbparity/oracle.hpp"
#include "sbparity/sectors.hpp"

namespace sbparity::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fock::BasisEnumeration enumerate(const RunConfig& config, std::size_t cap) {
    return fock::enumerate_basis(config.mode_count(), config.n_max, cap);
}

bath::DiscretizedBath discretize(const RunConfig& config) {
    return bath::discretize(config.bath, config.discretization);
}

std::string svg_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

// fig1 ----------------------------------------------------------------------

Table fig1_table(const Fig1Options& options) {
    if (options.N_max < 0) throw DomainError("N_max must be >= 0");
    if (options.s_list.empty()) throw DomainError("s_list must not be empty");
    Table t;
    t.columns.push_back("N");
    for (double s : options.s_list) t.columns.push_back("beta2_s" + format_label(s));
    for (int N = 0; N <= options.N_max; ++N) {
        std::vector<Cell> row{static_cast<long long>(N)};
        for (double s : options.s_list) row.emplace_back(bath::beta2_best(s, options.Lambda, N));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string fig1_plot_script(const Fig1Options& options, const std::string& data_file) {
    std::ostringstream os;
    os << "#!/usr/bin/env python3\n"
       << "import csv\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "with open(\"" << data_file << "\", newline=\"\") as f:\n"
       << "    rows = list(csv.DictReader(f))\n"
       << "columns = [c for c in rows[0].keys() if c != \"N\"]\n"
       << "N = [int(r[\"N\"]) for r in rows]\n"
       << "fig, axes = plt.subplots(1, len(columns), figsize=(5 * len(columns), 4), squeeze=False)\n"
       << "for ax, col in zip(axes[0], columns):\n"
       << "    ax.plot(N, [float(r[col]) for r in rows], marker=\"o\", markersize=3)\n"
       << "    ax.set_xlabel(\"N\")\n"
       << "    ax.set_ylabel(col)\n"
       << "    ax.set_title(col + \" (Lambda=" << format_label(options.Lambda)
       << ", omega_c=" << format_label(options.omega_c) << ")\")\n"
       << "fig.tight_layout()\n"
       << "fig.savefig(\"fig1.png\", dpi=150)\n";
    return os.str();
}

std::string svg_line_plot(const Table& table, const std::string& title) {
    constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
    std::vector<double> x;
    std::vector<std::vector<double>> ys(table.columns.size() > 0 ? table.columns.size() - 1 : 0);
    auto as_double = [](const Cell& c) {
        if (const auto* d = std::get_if<double>(&c)) return *d;
        if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
        return kNaN;
    };
    for (const auto& row : table.rows) {
        x.push_back(as_double(row.at(0)));
        for (std::size_t c = 1; c < row.size(); ++c) ys[c - 1].push_back(as_double(row[c]));
    }
    double xmin = x.empty() ? 0 : *std::min_element(x.begin(), x.end());
    double xmax = x.empty() ? 1 : *std::max_element(x.begin(), x.end());
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& y : ys)
        for (double v : y)
            if (std::isfinite(v)) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
    const bool log_y = ymin > 0 && ymax / ymin > 1e3;
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    double y0 = ty(ymin), y1 = ty(ymax);
    if (y1 == y0) y1 = y0 + 1;
    if (xmax == xmin) xmax = xmin + 1;
    auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n"
       << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
       << table.columns.at(0) << "</text>\n"
       << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"10\">"
       << svg_number(ymin) << "</text>\n"
       << "<text x=\"" << L - 4 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
       << svg_number(ymax) << "</text>\n"
       << "<text x=\"" << L << "\" y=\"" << H - B + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
       << svg_number(xmin) << "</text>\n"
       << "<text x=\"" << W - R << "\" y=\"" << H - B + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
       << svg_number(xmax) << "</text>\n";
    if (log_y)
        os << "<text x=\"" << L + 6 << "\" y=\"" << T + 4 << "\" font-size=\"10\">log scale</text>\n";
    for (std::size_t c = 0; c < ys.size(); ++c) {
        const char* color = colors[c % std::size(colors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::isfinite(ys[c][i])) os << svg_number(px(x[i])) << ',' << svg_number(py(ys[c][i])) << ' ';
        os << "\"/>\n"
           << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 16 * (c + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
           << color << "\">" << table.columns[c + 1] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

int cmd_fig1(const Fig1Options& options, const CommonOptions& common, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const Table table = fig1_table(options);
    OutputDirectory out(common.out);
    out.write_table("fig1", table, common.format);
    out.write("fig1_plot.py", fig1_plot_script(options, "fig1.csv"));
    if (options.svg) out.write("fig1.svg", svg_line_plot(table, "beta2 versus N"));
    out.write_manifest("fig1", {{"parameters",
                                 {{"Lambda", options.Lambda},
                                  {"omega_c", options.omega_c},
                                  {"s_list", options.s_list},
                                  {"N_max", options.N_max}}},
                                {"wall_time", seconds_since(start)}});
    log << "fig1: wrote " << table.rows.size() << " rows to " << common.out.string() << "\n";
    return kExitOk;
}

// gap-sweep -----------------------------------------------------------------

ResultRow evaluate_point(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ResultRow row;
    row.config = config;
    row.E_plus0 = row.E_minus0 = row.gap = row.prefactor = row.sum_q_squared = kNaN;
    row.residual_plus = row.residual_minus = kNaN;
    try {
        config.bath.validate();
        config.discretization.validate();
        const auto b = discretize(config);
        row.prefactor = bath::prefactor(b);
        row.sum_q_squared = b.sum_q_squared();
        const auto basis = enumerate(config, fock::kDefaultMaxDimension);
        const auto result = sectors::solve_sectors(b, config.model, basis, config.solver);
        row.E_plus0 = result.even.energy;
        row.E_minus0 = result.odd.energy;
        row.gap = result.gap();
        row.residual_plus = result.even.residual;
        row.residual_minus = result.odd.residual;
        row.ground_parity = row.gap > 0 ? "+1" : row.gap < 0 ? "-1" : "degenerate";
    } catch (const SolverError& e) {
        row.status = std::string("solver-failure: ") + e.what();
    } catch (const CapacityError& e) {
        row.status = std::string("capacity-error: ") + e.what();
    } catch (const UnsupportedDecomposition& e) {
        row.status = std::string("unsupported: ") + e.what();
    } catch (const DomainError& e) {
        row.status = std::string("domain-error: ") + e.what();
    } catch (const Error& e) {
        row.status = std::string("error: ") + e.what();
    }
    row.wall_time = seconds_since(start);
    return row;
}

std::vector<ResultRow> run_gap_sweep(const RunConfig& config, int workers) {
    std::vector<RunConfig> points;
    if (config.sweep) {
        for (double v : config.sweep->values()) points.push_back(config.with_parameter(config.sweep->parameter, v));
    } else {
        points.push_back(config);
    }
    std::vector<ResultRow> rows(points.size());
    const std::size_t n_threads =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = evaluate_point(points[i]);
    };
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }
    return rows;
}

Table result_table(const std::vector<ResultRow>& rows) {
    Table t;
    t.columns = {"index",  "delta",   "epsilon",   "s",         "alpha",         "omega_c",
                 "omega1", "Lambda",  "N",         "convention", "n_max",        "tol",
                 "max_iter", "E_plus0", "E_minus0", "gap",       "prefactor",     "sum_q_squared",
                 "ground_parity", "residual_plus", "residual_minus", "status"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& c = r.config;
        t.rows.push_back({static_cast<long long>(i), c.model.delta, c.model.epsilon, c.bath.s, c.bath.alpha,
                          c.bath.omega_c, c.bath.omega1, c.discretization.Lambda,
                          static_cast<long long>(c.discretization.N),
                          std::string(bath::to_string(c.discretization.convention)),
                          static_cast<long long>(c.n_max), c.solver.tol, static_cast<long long>(c.solver.max_iter),
                          r.E_plus0, r.E_minus0, r.gap, r.prefactor, r.sum_q_squared, r.ground_parity,
                          r.residual_plus, r.residual_minus, r.status});
    }
    return t;
}

int cmd_gap_sweep(const RunConfig& config, const CommonOptions& common, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const auto rows = run_gap_sweep(config, common.workers);
    const Table table = result_table(rows);
    OutputDirectory out(common.out);
    out.write_table("gap_sweep", table, common.format);

    nlohmann::json row_meta = nlohmann::json::array();
    int code = kExitOk;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        row_meta.push_back({{"index", i},
                            {"sha256", sha256_hex(table.row_csv(i))},
                            {"wall_time", rows[i].wall_time},
                            {"status", rows[i].status}});
        const auto& status = rows[i].status;
        if (status == "ok") continue;
        int c = status.starts_with("domain-error")     ? kExitConfigError
                : status.starts_with("capacity-error") ? kExitCapacityError
                                                       : kExitSolverFailure;
        if (code == kExitOk || c < code) code = c;
        log << "gap-sweep: point " << i << ": " << status << "\n";
    }
    out.write_manifest("gap-sweep", {{"config", config.to_json()},
                                     {"workers", common.workers},
                                     {"rows", row_meta},
                                     {"wall_time", seconds_since(start)}});
    log << "gap-sweep: " << rows.size() << " points written to " << common.out.string() << "\n";
    return code;
}

// oracle-check --------------------------------------------------------------

bool OracleCheckReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string OracleCheckReport::to_text() const {
    std::ostringstream os;
    os << "epsilon: " << format_double(epsilon) << "\n";
    for (const auto& c : checks)
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << format_double(c.value) << " (" << c.criterion
           << ")\n";
    os << "ground parity: " << ground_parity << "\n";
    os << "parity broken: " << (parity_broken ? "yes" : "no") << "\n";
    if (!parity_broken)
        os << "sector vs dense ground energy (different truncations): " << format_double(sector_ground_deviation)
           << "\n";
    os << "result: " << (all_pass() ? "all checks pass" : "invariant failure") << "\n";
    return os.str();
}

nlohmann::json OracleCheckReport::to_json() const {
    nlohmann::json checks_json = nlohmann::json::array();
    for (const auto& c : checks)
        checks_json.push_back({{"name", c.name}, {"value", c.value}, {"criterion", c.criterion}, {"pass", c.pass}});
    nlohmann::json j = {{"epsilon", epsilon},
                        {"checks", checks_json},
                        {"ground_parity", ground_parity},
                        {"parity_broken", parity_broken},
                        {"all_pass", all_pass()}};
    if (!parity_broken) j["sector_ground_deviation"] = sector_ground_deviation;
    return j;
}

OracleCheckReport run_oracle_check(const RunConfig& config) {
    config.bath.validate();
    config.discretization.validate();
    const auto b = discretize(config);
    const auto basis = enumerate(config, oracle::kDenseCap);
    const auto model = oracle::assemble_full(config.model, b, basis);

    OracleCheckReport report;
    report.epsilon = config.model.epsilon;
    report.parity_broken = config.model.epsilon != 0.0;
    auto add = [&](std::string name, double value, std::string criterion, bool pass) {
        report.checks.push_back({std::move(name), value, std::move(criterion), pass});
    };

    const Eigen::MatrixXd Pi = oracle::parity_matrix(basis);
    const Eigen::MatrixXd U = oracle::unitary_U(basis);
    const Eigen::Index n = U.rows();

    const double comm = oracle::commutator_norm(model.hamiltonian, Pi);
    if (report.parity_broken) {
        const double eps = std::abs(config.model.epsilon);
        add("commutator_H_Pi", comm, "== |epsilon| within 1e-10", std::abs(comm - eps) <= 1e-10);
    } else {
        add("commutator_H_Pi", comm, "< 1e-12", comm < 1e-12);
    }

    const double unitary = (U * U.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    add("unitarity_U", unitary, "< 1e-14", unitary < 1e-14);

    const double transport = (U * Pi * U.transpose() - oracle::sigma_z_full(basis)).cwiseAbs().maxCoeff();
    add("U_Pi_Ut_minus_sigma_z", transport, "< 1e-14", transport < 1e-14);

    const double frozen = oracle::frozen_spin_check(b, basis);
    add("frozen_spin_commutator", frozen, "< 1e-13", frozen < 1e-13);

    if (!report.parity_broken) {
        const auto blocks = oracle::block_decompose(model);
        add("block_off_diagonal_norm", blocks.off_diagonal_norm, "< 1e-12", blocks.off_diagonal_norm < 1e-12);
        const double partition = oracle::spectrum_partition_deviation(model);
        add("spectrum_partition_deviation", partition, "< 1e-9", partition < 1e-9);
    }

    try {
        const auto verdict = oracle::ground_parity(model);
        report.ground_parity = std::string(oracle::to_string(verdict.parity));
        if (!report.parity_broken)
            add("ground_parity_definite", verdict.expectation, "|<Pi>| >= 1 - 1e-8",
                verdict.parity != oracle::Parity::Mixed);
    } catch (const DegenerateGroundError&) {
        report.ground_parity = "degenerate";
        if (!report.parity_broken) add("ground_parity_definite", kNaN, "nondegenerate ground state", false);
    }

    if (!report.parity_broken && config.model.delta != 0.0) {
        const auto dense = oracle::dense_sector_energies(model);
        const auto sector = sectors::solve_sectors(b, config.model, basis, config.solver);
        report.sector_ground_deviation = std::max(std::abs(dense.even - sector.even.energy),
                                                  std::abs(dense.odd - sector.odd.energy));
    }
    return report;
}

int cmd_oracle_check(const RunConfig& config, const CommonOptions& common, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const auto report = run_oracle_check(config);
    OutputDirectory out(common.out);
    const std::string text = report.to_text();
    out.write("oracle_check.txt", text);
    out.write("oracle_check.json", report.to_json().dump(2) + "\n");
    out.write_manifest("oracle-check", {{"config", config.to_json()}, {"wall_time", seconds_since(start)}});
    log << text;
    return report.all_pass() ? kExitOk : kExitInvariantFailure;
}

// verify-appendix -----------------------------------------------------------

int cmd_verify_appendix(const std::vector<int>& modes, const std::vector<int>& n_max, const CommonOptions& common,
                        std::ostream& log) {
    if (modes.empty() || n_max.empty()) throw ConfigError("verify-appendix: --modes and --n-max must be non-empty");
    for (int m : modes)
        if (m < 1) throw ConfigError("verify-appendix: --modes entries must be >= 1");
    for (int n : n_max)
        if (n < 0) throw ConfigError("verify-appendix: --n-max entries must be >= 0");

    const auto start = std::chrono::steady_clock::now();
    OutputDirectory out(common.out);
    Table summary;
    summary.columns = {"modes", "n_max", "case1", "case2", "monomial_count", "left_constant", "right_constant",
                       "verdict"};
    bool all = true;
    for (int m : modes) {
        for (int n : n_max) {
            const auto report = appendix::verify_appendix(static_cast<std::size_t>(m), n);
            const std::string stem = "appendix_modes" + std::to_string(m) + "_nmax" + std::to_string(n);
            out.write(stem + ".txt", report.to_text());
            out.write(stem + ".json", report.to_json() + "\n");
            const std::string verdict = report.holds() ? "holds" : "fails";
            summary.rows.push_back({static_cast<long long>(m), static_cast<long long>(n),
                                    std::string(appendix::to_string(report.case1)),
                                    std::string(appendix::to_string(report.case2)),
                                    static_cast<long long>(report.monomial_count), report.left_constant.str(),
                                    report.right_constant.str(), verdict});
            log << "modes=" << m << " n_max=" << n << ": " << verdict << " (monomials " << report.monomial_count
                << ")\n";
            all = all && report.holds();
        }
    }
    out.write_table("appendix_summary", summary, common.format);
    out.write_manifest("verify-appendix",
                       {{"modes", modes}, {"n_max", n_max}, {"all_hold", all}, {"wall_time", seconds_since(start)}});
    return all ? kExitOk : kExitInvariantFailure;
}

// magnetization-scan --------------------------------------------------------

Table magnetization_table(const RunConfig& config, const ScanOptions& options) {
    if (options.steps < 1) throw ConfigError("magnetization-scan: steps must be >= 1");
    config.bath.validate();
    config.discretization.validate();
    const auto b = discretize(config);
    const int n = options.steps;
    Table t;
    if (options.mode == ScanMode::Theta) {
        sectors::ModelParams params = config.model;
        params.epsilon = 0.0;
        const auto basis = enumerate(config, fock::kDefaultMaxDimension);
        const auto ground = sectors::solve_sectors(b, params, basis, config.solver);
        const double overlap = ground.even.coefficients.dot(ground.odd.coefficients);
        t.columns = {"theta", "magnetization", "overlap"};
        for (int i = 0; i < n; ++i) {
            const double theta = n == 1 ? 0.0 : std::numbers::pi / 2 * i / (n - 1);
            // adding 0.0 turns -0 into 0 so theta = 0 prints as "0"
            t.rows.push_back({theta, oracle::magnetization(theta, ground.even, ground.odd) + 0.0, overlap});
        }
    } else {
        const auto basis = enumerate(config, oracle::kDenseCap);
        const Eigen::MatrixXd Pi = oracle::parity_matrix(basis);
        const Eigen::MatrixXd Sz = oracle::sigma_z_full(basis);
        t.columns = {"epsilon", "magnetization", "parity_expectation"};
        for (int i = 0; i < n; ++i) {
            const double eps = n == 1 ? 0.0 : options.epsilon_max * (2.0 * i - (n - 1)) / (n - 1);
            const auto model = oracle::assemble_full({config.model.delta, eps}, b, basis);
            const auto spectrum = oracle::diagonalize(model);
            const Eigen::VectorXd psi = spectrum.vectors.col(0);
            t.rows.push_back({eps, psi.dot(Sz * psi), psi.dot(Pi * psi)});
        }
    }
    return t;
}

int cmd_magnetization_scan(const RunConfig& config, const ScanOptions& options, const CommonOptions& common,
                           std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const Table table = magnetization_table(config, options);
    OutputDirectory out(common.out);
    const std::string stem = options.mode == ScanMode::Theta ? "magnetization_theta" : "magnetization_epsilon";
    out.write_table(stem, table, common.format);
    out.write_manifest("magnetization-scan",
                       {{"config", config.to_json()},
                        {"mode", options.mode == ScanMode::Theta ? "theta" : "epsilon"},
                        {"steps", options.steps},
                        {"epsilon_max", options.epsilon_max},
                        {"wall_time", seconds_since(start)}});
    log << "magnetization-scan: " << table.rows.size() << " points written to " << common.out.string() << "\n";
    return kExitOk;
}

// discretize ----------------------------------------------------------------

Table discretize_table(const RunConfig& config) {
    config.bath.validate();
    config.discretization.validate();
    const auto b = discretize(config);
    Table t;
    t.columns = {"k", "omega", "lambda", "q", "q_squared"};
    for (std::size_t k = 0; k < b.mode_count(); ++k) {
        const double q = b.q()[k];
        t.rows.push_back({static_cast<long long>(k), b.omega()[k], b.lambda()[k], q, q * q});
    }
    return t;
}

int cmd_discretize(const RunConfig& config, const CommonOptions& common, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const Table table = discretize_table(config);
    const auto b = discretize(config);
    OutputDirectory out(common.out);
    out.write_table("discretization", table, common.format);
    out.write_manifest("discretize", {{"config", config.to_json()},
                                      {"sum_q_squared", b.sum_q_squared()},
                                      {"prefactor", bath::prefactor(b)},
                                      {"wall_time", seconds_since(start)}});
    log << "discretize: " << table.rows.size() << " modes, sum q^2 = " << format_double(b.sum_q_squared()) << "\n";
    return kExitOk;
}

}  // namespace sbparity::cli
