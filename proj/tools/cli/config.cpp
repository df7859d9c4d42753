#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sbparity/errors.hpp"
#include "sbparity/fockspace.hpp"

namespace sbparity::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kSweepParameters = {"alpha", "s", "delta", "N", "n_max", "Lambda"};

bool is_integer_parameter(const std::string& name) { return name == "N" || name == "n_max"; }

struct Reader {
    std::string source;

    [[noreturn]] void fail(const std::string& field, const std::string& message) const {
        throw ConfigError(source + ": field " + field + ": " + message);
    }

    const json& group(const json& root, const std::string& name, const std::set<std::string>& keys) const {
        static const json empty = json::object();
        if (!root.contains(name)) return empty;
        const json& g = root.at(name);
        if (!g.is_object()) fail(name, "must be an object");
        for (const auto& [key, value] : g.items())
            if (!keys.contains(key)) fail(name + "." + key, "unknown key");
        return g;
    }

    void number(const json& g, const std::string& group, const std::string& key, double& out) const {
        if (!g.contains(key)) return;
        const json& v = g.at(key);
        if (!v.is_number()) fail(group + "." + key, "must be a number");
        out = v.get<double>();
        if (!std::isfinite(out)) fail(group + "." + key, "must be finite");
    }

    void integer(const json& g, const std::string& group, const std::string& key, int& out) const {
        if (!g.contains(key)) return;
        const json& v = g.at(key);
        if (!v.is_number_integer()) fail(group + "." + key, "must be an integer");
        out = v.get<int>();
    }

    void text(const json& g, const std::string& group, const std::string& key, std::string& out) const {
        if (!g.contains(key)) return;
        const json& v = g.at(key);
        if (!v.is_string()) fail(group + "." + key, "must be a string");
        out = v.get<std::string>();
    }
};

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return std::to_string(line) + ":" + std::to_string(column);
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double v = from;
        if (steps > 1) {
            const double a = static_cast<double>(steps - 1 - i);
            const double b = static_cast<double>(i);
            const double d = static_cast<double>(steps - 1);
            v = scale == SweepScale::Linear ? (from * a + to * b) / d
                                            : std::exp((std::log(from) * a + std::log(to) * b) / d);
        }
        if (is_integer_parameter(parameter)) v = std::round(v);
        out.push_back(v);
    }
    return out;
}

RunConfig RunConfig::with_parameter(const std::string& name, double value) const {
    RunConfig c = *this;
    if (name == "alpha") c.bath.alpha = value;
    else if (name == "s") c.bath.s = value;
    else if (name == "delta") c.model.delta = value;
    else if (name == "Lambda") c.discretization.Lambda = value;
    else if (name == "N") c.discretization.N = static_cast<int>(value);
    else if (name == "n_max") c.n_max = static_cast<int>(value);
    else throw ConfigError("unknown sweep parameter '" + name + "'");
    return c;
}

nlohmann::json RunConfig::to_json() const {
    json j = {
        {"model", {{"delta", model.delta}, {"epsilon", model.epsilon}}},
        {"bath", {{"s", bath.s}, {"alpha", bath.alpha}, {"omega_c", bath.omega_c}, {"omega1", bath.omega1}}},
        {"discretization",
         {{"Lambda", discretization.Lambda},
          {"N", discretization.N},
          {"convention", std::string(bath::to_string(discretization.convention))}}},
        {"truncation", {{"n_max", n_max}}},
        {"solver", {{"tol", solver.tol}, {"max_iter", solver.max_iter}}},
    };
    if (sweep) {
        j["sweep"] = {{"parameter", sweep->parameter},
                      {"from", sweep->from},
                      {"to", sweep->to},
                      {"steps", sweep->steps},
                      {"scale", sweep->scale == SweepScale::Linear ? "linear" : "log"}};
    }
    return j;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ":" + location(text, e.byte) + ": syntax error: " + e.what());
    }
    const Reader r{source};
    if (!root.is_object()) throw ConfigError(source + ":1:1: top level must be a JSON object");
    const std::set<std::string> groups = {"model", "bath", "discretization", "truncation", "solver", "sweep"};
    for (const auto& [key, value] : root.items())
        if (!groups.contains(key)) r.fail(key, "unknown group");

    RunConfig c;
    const json& model = r.group(root, "model", {"delta", "epsilon"});
    r.number(model, "model", "delta", c.model.delta);
    r.number(model, "model", "epsilon", c.model.epsilon);

    const json& bath = r.group(root, "bath", {"s", "alpha", "omega_c", "omega1"});
    r.number(bath, "bath", "s", c.bath.s);
    r.number(bath, "bath", "alpha", c.bath.alpha);
    r.number(bath, "bath", "omega_c", c.bath.omega_c);
    r.number(bath, "bath", "omega1", c.bath.omega1);
    if (c.bath.s <= 0) r.fail("bath.s", "must be > 0");
    if (c.bath.alpha < 0) r.fail("bath.alpha", "must be >= 0");
    if (c.bath.omega_c <= 0) r.fail("bath.omega_c", "must be > 0");
    if (c.bath.omega1 <= 0 || c.bath.omega1 >= c.bath.omega_c)
        r.fail("bath.omega1", "must satisfy 0 < omega1 < omega_c");

    const json& disc = r.group(root, "discretization", {"Lambda", "N", "convention"});
    r.number(disc, "discretization", "Lambda", c.discretization.Lambda);
    r.integer(disc, "discretization", "N", c.discretization.N);
    std::string convention(bath::to_string(c.discretization.convention));
    r.text(disc, "discretization", "convention", convention);
    const auto parsed = bath::parse_convention(convention);
    if (!parsed) r.fail("discretization.convention", "must be 'mean-omega' or 'paper-quarter'");
    c.discretization.convention = *parsed;
    if (c.discretization.Lambda <= 1) r.fail("discretization.Lambda", "must be > 1");
    if (c.discretization.N < 0) r.fail("discretization.N", "must be >= 0");

    const json& trunc = r.group(root, "truncation", {"n_max"});
    r.integer(trunc, "truncation", "n_max", c.n_max);
    if (c.n_max < 0 || c.n_max > fock::kMaxOccupation)
        r.fail("truncation.n_max", "must lie in [0, " + std::to_string(fock::kMaxOccupation) + "]");

    const json& solver = r.group(root, "solver", {"tol", "max_iter"});
    r.number(solver, "solver", "tol", c.solver.tol);
    r.integer(solver, "solver", "max_iter", c.solver.max_iter);
    if (c.solver.tol <= 0) r.fail("solver.tol", "must be > 0");
    if (c.solver.max_iter < 1) r.fail("solver.max_iter", "must be >= 1");

    if (root.contains("sweep")) {
        const json& sw = r.group(root, "sweep", {"parameter", "from", "to", "steps", "scale"});
        SweepSpec spec;
        if (!sw.contains("parameter")) r.fail("sweep.parameter", "is required");
        r.text(sw, "sweep", "parameter", spec.parameter);
        if (!kSweepParameters.contains(spec.parameter))
            r.fail("sweep.parameter", "must be one of alpha, s, delta, N, n_max, Lambda");
        if (!sw.contains("from") || !sw.contains("to")) r.fail("sweep", "'from' and 'to' are required");
        r.number(sw, "sweep", "from", spec.from);
        r.number(sw, "sweep", "to", spec.to);
        r.integer(sw, "sweep", "steps", spec.steps);
        if (spec.steps < 1) r.fail("sweep.steps", "must be >= 1");
        std::string scale = "linear";
        r.text(sw, "sweep", "scale", scale);
        if (scale == "linear") spec.scale = SweepScale::Linear;
        else if (scale == "log") spec.scale = SweepScale::Log;
        else r.fail("sweep.scale", "must be 'linear' or 'log'");
        if (spec.scale == SweepScale::Log && (spec.from <= 0 || spec.to <= 0))
            r.fail("sweep", "log scale requires positive 'from' and 'to'");
        c.sweep = spec;
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

}  // namespace sbparity::cli
