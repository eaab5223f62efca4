#include "zsplit/errors.hpp"
#include "zsplit/harness.hpp"
#include "zsplit/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zsplit {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
    }
    return value;
}

OperatorAssignment parse_assignment(const std::string& text)
{
    if (text == "diffusion-vs-rest") {
        return OperatorAssignment::diffusion_vs_rest;
    }
    if (text == "transport-vs-reaction") {
        return OperatorAssignment::transport_vs_reaction;
    }
    throw ConfigError("unknown operator assignment '" + text + "'");
}

InitSampling parse_sampling(const std::string& text)
{
    if (text == "elapsed") {
        return InitSampling::elapsed;
    }
    if (text == "stepped") {
        return InitSampling::stepped;
    }
    throw ConfigError("unknown init_sampling '" + text + "'");
}

int default_cells(const Config& config)
{
    const double dx = config.get_double("dx", 0.1);
    if (!(dx > 0.0)) {
        throw ConfigError("dx must be positive");
    }
    return static_cast<int>(std::lround(1.0 / dx));
}

void write_matrix_csv(const Matrix& m, const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (c ? "," : "") << format_number(m(r, c));
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

} // namespace

const std::vector<std::string>& Config::known_keys()
{
    static const std::vector<std::string> keys = {
        "problem", "schemes", "tau_list", "t_end",   "substeps",   "init_sampling", "jobs",  "out_dir",
        "cells",   "dx",      "v",        "D",       "lambda1",    "lambda2",       "species", "lambdas",
        "retardation", "beta", "assignment", "min_timing_seconds"};
    return keys;
}

Config Config::parse(const std::string& text)
{
    Config config;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number) + ": expected key=value");
        }
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

Config Config::load(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void Config::set(const std::string& key, const std::string& value)
{
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
    values_[key] = value;
}

std::string Config::get(const std::string& key, const std::string& fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : to_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    const double value = to_double(key, it->second);
    if (value != std::floor(value) || std::abs(value) > 1e9) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + it->second + "'");
    }
    return static_cast<int>(value);
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(to_double(key, item));
        }
    }
    return out;
}

std::vector<double> default_tau_list()
{
    std::vector<double> taus;
    for (int k = 0; k <= 6; ++k) {
        taus.push_back(std::ldexp(0.1, -k));
    }
    return taus;
}

ModelSystem make_model(const Config& config)
{
    const std::string problem = config.get("problem", "matrix-demo");
    if (problem == "matrix-demo") {
        const SplitProblem demo = matrix_demo();
        return ModelSystem{demo.a(), demo.b(), demo.c0()};
    }
    if (problem == "one-phase") {
        OnePhaseSpec spec;
        spec.dx = config.get_double("dx", spec.dx);
        spec.cells = config.get_int("cells", default_cells(config));
        spec.v = config.get_double("v", spec.v);
        spec.D = config.get_double("D", spec.D);
        spec.lambda1 = config.get_double("lambda1", spec.lambda1);
        spec.lambda2 = config.get_double("lambda2", spec.lambda2);
        spec.t_end = config.get_double("t_end", spec.t_end);
        spec.assignment = parse_assignment(config.get("assignment", "diffusion-vs-rest"));
        return build_one_phase(spec);
    }
    if (problem == "multiphase") {
        MultiphaseSpec spec;
        spec.dx = config.get_double("dx", spec.dx);
        spec.cells = config.get_int("cells", default_cells(config));
        spec.species = config.get_int("species", 2);
        spec.v = config.get_double("v", spec.v);
        spec.D = config.get_double("D", spec.D);
        std::vector<double> default_lambdas(static_cast<std::size_t>(std::max(spec.species, 0)) + 1, 0.1);
        default_lambdas[0] = 0.0;
        spec.lambdas = config.get_list("lambdas", default_lambdas);
        spec.retardation =
            config.get_list("retardation", std::vector<double>(static_cast<std::size_t>(std::max(spec.species, 0)), 1.0));
        spec.beta = config.get_double("beta", 0.5);
        spec.assignment = parse_assignment(config.get("assignment", "transport-vs-reaction"));
        return build_multiphase(spec);
    }
    throw ConfigError("unknown problem '" + problem + "' (expected matrix-demo, one-phase or multiphase)");
}

Experiment make_experiment(const Config& config)
{
    const std::string problem_name = config.get("problem", "matrix-demo");
    const double t_end = config.get_double("t_end", 1.0);
    if (!(t_end > 0.0)) {
        throw ConfigError("t_end must be positive");
    }
    const int substeps = config.get_int("substeps", 64);
    const InitSampling sampling = parse_sampling(config.get("init_sampling", "elapsed"));

    ModelSystem system = make_model(config);
    Experiment ex{problem_name,
                  system.to_problem(t_end),
                  parse_scheme_list(config.get("schemes", "lie,strang"), substeps, sampling),
                  config.get_list("tau_list", default_tau_list()),
                  t_end,
                  RunOptions{},
                  fs::path(config.get("out_dir", "results"))};
    if (ex.schemes.empty()) {
        throw ConfigError("no schemes configured");
    }
    if (ex.taus.empty()) {
        throw ConfigError("empty tau_list");
    }
    for (double tau : ex.taus) {
        try {
            step_count(t_end, tau);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    ex.options.jobs = config.get_int("jobs", 1);
    ex.options.min_timing_seconds = config.get_double("min_timing_seconds", ex.options.min_timing_seconds);
    if (problem_name != "matrix-demo") {
        ex.options.l2_dx = config.get_double("dx", 0.1);
    }
    return ex;
}

void dump_model(const ModelSystem& system, const fs::path& out_dir)
{
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
    }
    write_matrix_csv(system.a1, out_dir / "A1.csv");
    write_matrix_csv(system.a2, out_dir / "A2.csv");
    const auto& c0 = system.c0;
    write_matrix_csv(Matrix(c0.dim(), 1, c0.values()), out_dir / "c0.csv");
}

} // namespace zsplit
