#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "sbparity/bath.hpp"
#include "sbparity/sectors.hpp"

namespace sbparity::cli {

/// Malformed or out-of-range configuration. The message starts with the
/// source location (file:line:column) or the dotted field path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepScale { Linear, Log };

struct SweepSpec {
    std::string parameter;  ///< alpha, s, delta, N, n_max or Lambda
    double from = 0.0;
    double to = 0.0;
    int steps = 1;
    SweepScale scale = SweepScale::Linear;

    /// Grid values in sweep order. Integer parameters are rounded.
    std::vector<double> values() const;
};

struct RunConfig {
    sectors::ModelParams model{0.1, 0.0};
    bath::BathSpec bath{0.5, 0.05, 1.0, 1e-3};
    bath::DiscretizationSpec discretization{2.0, 2, bath::Convention::PaperQuarter};
    int n_max = 6;
    sectors::SolverOptions solver{};
    std::optional<SweepSpec> sweep;

    /// Number of bath modes, N + 1.
    std::size_t mode_count() const { return static_cast<std::size_t>(discretization.N) + 1; }
    /// Copy with one sweep parameter replaced.
    RunConfig with_parameter(const std::string& name, double value) const;
    nlohmann::json to_json() const;
};

/// Parses the JSON config format. Groups: model, bath, discretization,
/// truncation, solver, sweep. Absent keys keep their defaults; unknown keys
/// are errors.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace sbparity::cli
