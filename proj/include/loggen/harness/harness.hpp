#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "loggen/core/serialize.hpp"
#include "loggen/evolution/evolution.hpp"
#include "loggen/topology/topology.hpp"

namespace loggen::harness {

using core::Matrix;
using core::Vector;

enum class Kind { Log, Reconstruct, Evolve, Topology };

const char* to_string(Kind k);
Kind kind_from_string(const std::string& s);

struct Sweep {
    std::vector<double> h; // strictly decreasing
    std::vector<int> N;    // strictly increasing
};

// Operator input: an explicit matrix or a seeded random one scaled to a
// prescribed spectral radius.
struct OperatorSpec {
    std::optional<Matrix> explicit_op;
    int random_dim = 0;
    double random_spectral_radius = 0.0;

    bool is_random() const { return !explicit_op.has_value(); }
};

struct GridSpec {
    int points = 0;
    double t_end = 0.0;
};

struct ProbeSpec {
    Vector u_s;
    double t = 0.0;
    std::vector<double> h_sequence;
};

struct ExperimentConfig {
    int schema_version = 1;
    Kind kind = Kind::Topology;
    std::uint64_t seed = 0;
    std::string output_path;
    Sweep sweep;

    std::optional<evolution::EvolutionFamily> family;
    double t = 1.0;
    double s = 0.0;
    double kappa_margin = 1.0;
    bool richardson = false;
    std::optional<ProbeSpec> probe;
    bool proof_chain = false;

    std::optional<OperatorSpec> op;

    std::optional<Vector> u0;
    std::optional<evolution::Forcing> forcing;
    std::optional<GridSpec> grid;
    std::optional<Vector> functional;
    bool regularized = false;
    int semigroup_triples = 0;

    int n_max = topology::kDefaultNMax;
    double tol = topology::kDefaultTol;
};

// Parses and validates a config document; throws SchemaError with a pointer
// to the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct RunResult {
    nlohmann::json manifest;
    std::vector<std::string> outputs; // file names relative to the run directory
    bool verdict_ok = true;           // topology runs: matrix matched expectations
};

// Dispatches the experiment, writes the report files and manifest.json under
// out_root / config.output_path and returns the manifest. Row order follows
// sweep order and all numbers are emitted with shortest round-trip
// formatting, so a fixed config and seed produce byte-identical reports.
RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_root,
              bool quiet = true);

// One ready-to-run config per acceptance scenario; running all of them
// exercises every operation of the calculus, evolution, reconstruction and
// topology modules.
std::vector<std::filesystem::path> generate_example_configs(
    const std::filesystem::path& dir);

// Seeded dense operator with entries in the unit square, rescaled so the
// spectral radius equals the requested value.
Matrix random_operator(int dim, std::uint64_t seed, double spectral_radius);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double x);

} // namespace loggen::harness
