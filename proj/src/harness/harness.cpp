#include "loggen/harness/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>

#include "loggen/logrep/logrep.hpp"
#include "loggen/version.hpp"

namespace loggen::harness {

namespace {

using evolution::AlphaProfile;
using evolution::EvolutionFamily;
using evolution::Forcing;
using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON field access with pointer-style error messages

const json& require_field(const json& j, const char* path, const char* field) {
    if (!j.contains(field))
        throw SchemaError(std::string(path) + "." + field + ": missing field");
    return j[field];
}

double require_number(const json& j, const std::string& path) {
    if (!j.is_number())
        throw SchemaError(path + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw SchemaError(path + ": non-finite value");
    return x;
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw SchemaError(path + ": expected an integer");
    return j.get<int>();
}

std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string())
        throw SchemaError(path + ": expected a string");
    return j.get<std::string>();
}

AlphaProfile parse_alpha(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError(path + ".kind: missing profile kind");
    const std::string kind = require_string(j["kind"], path + ".kind");
    if (kind == "constant")
        return AlphaProfile::make_constant(
            require_number(require_field(j, path.c_str(), "c"), path + ".c"));
    if (kind == "poly") {
        const json& coeffs = require_field(j, path.c_str(), "coeffs");
        if (!coeffs.is_array() || coeffs.empty())
            throw SchemaError(path + ".coeffs: expected a nonempty array");
        std::vector<double> c;
        for (size_t i = 0; i < coeffs.size(); ++i)
            c.push_back(require_number(coeffs[i],
                                       path + ".coeffs[" + std::to_string(i) + "]"));
        return AlphaProfile::polynomial(std::move(c));
    }
    if (kind == "sin")
        return AlphaProfile::sinusoid(
            require_number(require_field(j, path.c_str(), "amp"), path + ".amp"),
            require_number(require_field(j, path.c_str(), "omega"), path + ".omega"),
            require_number(require_field(j, path.c_str(), "phase"), path + ".phase"));
    if (kind == "exp")
        return AlphaProfile::exponential(
            require_number(require_field(j, path.c_str(), "scale"), path + ".scale"),
            require_number(require_field(j, path.c_str(), "gamma"), path + ".gamma"));
    throw SchemaError(path + ".kind: unknown profile kind '" + kind + "'");
}

json alpha_to_json(const AlphaProfile& a) {
    switch (a.kind) {
        case AlphaProfile::Kind::Constant:
            return {{"kind", "constant"}, {"c", a.constant}};
        case AlphaProfile::Kind::Polynomial:
            return {{"kind", "poly"}, {"coeffs", a.coeffs}};
        case AlphaProfile::Kind::Sinusoid:
            return {{"kind", "sin"}, {"amp", a.amplitude}, {"omega", a.omega},
                    {"phase", a.phase}};
        case AlphaProfile::Kind::Exponential:
            return {{"kind", "exp"}, {"scale", a.scale}, {"gamma", a.growth}};
    }
    return {};
}

EvolutionFamily parse_family(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    EvolutionFamily fam;
    try {
        fam.M = core::matrix_from_json(require_field(j, path.c_str(), "M"));
    } catch (const SchemaError& e) {
        throw SchemaError(path + ".M: " + e.what());
    }
    fam.alpha = parse_alpha(require_field(j, path.c_str(), "alpha"), path + ".alpha");
    fam.T_max =
        require_number(require_field(j, path.c_str(), "T_max"), path + ".T_max");
    if (!(fam.T_max > 0.0))
        throw SchemaError(path + ".T_max: must be positive");
    return fam;
}

// ---------------------------------------------------------------------------
// Deterministic report writing

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open " + path.string() + " for writing");
        out_ << header << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
        if (!out_) throw IoError("csv write failed");
    }

private:
    std::ofstream out_;
};

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("json write failed: " + path.string());
}

class StageClock {
public:
    explicit StageClock(json& timings) : timings_(timings) {}

    template <typename F>
    auto stage(const std::string& name, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            record(name, start);
        } else {
            auto value = body();
            record(name, start);
            return value;
        }
    }

private:
    void record(const std::string& name,
                std::chrono::steady_clock::time_point start) {
        const auto stop = std::chrono::steady_clock::now();
        timings_[name + "_ms"] =
            std::chrono::duration<double, std::milli>(stop - start).count();
    }

    json& timings_;
};

json tolerance_table(const ExperimentConfig& config) {
    return {
        {"resolvent_condition_max", core::kResolventConditionMax},
        {"contour_containment_gap", dunford::kContainmentGap},
        {"exp_norm_max", dunford::kExpNormMax},
        {"alpha_quadrature_tol", 1e-14},
        {"pre_infinitesimal_cauchy_tol", 1e-6},
        {"topology_tol", config.tol},
        {"topology_divergence_factor", 10.0},
        {"kappa_margin", config.kappa_margin},
    };
}

std::vector<std::string> complex_vector_cells(const Vector& v) {
    std::vector<std::string> cells;
    cells.reserve(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        cells.push_back(format_double(v(i).real()));
        cells.push_back(format_double(v(i).imag()));
    }
    return cells;
}

std::string state_header(int dim, const char* first) {
    std::string header = first;
    for (int i = 1; i <= dim; ++i) {
        header += ",re(u_" + std::to_string(i) + ")";
        header += ",im(u_" + std::to_string(i) + ")";
    }
    return header;
}

Matrix resolve_operator(const ExperimentConfig& config) {
    if (!config.op.has_value())
        throw SchemaError("config.operator: required for kind 'log'");
    if (config.op->is_random())
        return random_operator(config.op->random_dim, config.seed,
                               config.op->random_spectral_radius);
    return *config.op->explicit_op;
}

// ---------------------------------------------------------------------------
// Experiment bodies; each writes its report files and appends to outputs.

void run_log(const ExperimentConfig& config, const std::filesystem::path& dir,
             RunResult& result, StageClock& clock) {
    const Matrix U = resolve_operator(config);

    struct Row {
        int nodes;
        dunford::AltGenerator gen;
    };
    std::vector<Row> rows = clock.stage("compute", [&] {
        std::vector<Row> out;
        for (int nodes : config.sweep.N) {
            auto cert = dunford::choose_kappa(U, config.kappa_margin, nodes);
            out.push_back({nodes, dunford::operator_log(U, cert)});
        }
        return out;
    });

    clock.stage("write", [&] {
        CsvWriter csv(dir / "log_sweep.csv", "N,roundtrip_residual");
        for (const Row& row : rows)
            csv.row({std::to_string(row.nodes),
                     format_double(row.gen.roundtrip_residual)});
        result.outputs.push_back("log_sweep.csv");

        const Row& last = rows.back();
        json doc = {
            {"schema_version", 1},
            {"a", core::matrix_to_json(last.gen.a)},
            {"kappa", last.gen.certificate.kappa.real()},
            {"radius", last.gen.certificate.contour.radius},
            {"N", last.nodes},
            {"roundtrip_residual", last.gen.roundtrip_residual},
        };
        write_json_file(dir / "log_result.json", doc);
        result.outputs.push_back("log_result.json");
    });
}

void run_reconstruct(const ExperimentConfig& config,
                     const std::filesystem::path& dir, RunResult& result,
                     StageClock& clock) {
    const EvolutionFamily& fam = *config.family;

    std::vector<logrep::ReconstructionReport> reports =
        clock.stage("reconstruct", [&] {
            std::vector<logrep::ReconstructionReport> out;
            for (int nodes : config.sweep.N) {
                const auto cert = logrep::window_certificate(
                    fam, config.s, config.kappa_margin, nodes);
                for (double h : config.sweep.h)
                    out.push_back(logrep::reconstruct_generator(
                        fam, config.t, config.s, cert, h, config.richardson));
            }
            return out;
        });

    clock.stage("write", [&] {
        CsvWriter csv(dir / "reconstruct.csv",
                      "h,N,error,order_estimate,roundtrip_residual");
        for (const auto& rep : reports)
            csv.row({format_double(rep.h), std::to_string(rep.nodes),
                     format_double(rep.error), format_double(rep.order_estimate),
                     format_double(rep.roundtrip_residual)});
        result.outputs.push_back("reconstruct.csv");
    });

    if (config.probe.has_value()) {
        const auto probe = clock.stage("probe", [&] {
            return logrep::pre_infinitesimal(fam, config.probe->t,
                                             config.probe->u_s,
                                             config.probe->h_sequence);
        });
        CsvWriter csv(dir / "probe.csv",
                      state_header(fam.dim(), "h,delta") + ",converged");
        for (size_t i = 0; i < probe.h_sequence.size(); ++i) {
            std::vector<std::string> cells{format_double(probe.h_sequence[i])};
            const double delta =
                i == 0 ? std::numeric_limits<double>::quiet_NaN()
                       : (probe.limits[i] - probe.limits[i - 1]).norm();
            cells.push_back(format_double(delta));
            for (const auto& c : complex_vector_cells(probe.limits[i]))
                cells.push_back(c);
            cells.push_back(i + 1 == probe.h_sequence.size()
                                ? (probe.converged ? "1" : "0")
                                : "");
            csv.row(cells);
        }
        result.outputs.push_back("probe.csv");
    }

    if (config.proof_chain) {
        const auto residuals = clock.stage("proof_chain", [&] {
            const auto cert = logrep::window_certificate(
                fam, config.s, config.kappa_margin, config.sweep.N.back());
            return logrep::proof_chain_check(fam, config.t, config.s, cert,
                                             config.sweep.h.back());
        });
        CsvWriter csv(dir / "proof_chain.csv", "identity,residual");
        for (const auto& [name, residual] : residuals)
            csv.row({name, format_double(residual)});
        result.outputs.push_back("proof_chain.csv");
    }
}

void run_evolve(const ExperimentConfig& config, const std::filesystem::path& dir,
                RunResult& result, StageClock& clock) {
    const EvolutionFamily& fam = *config.family;
    const Forcing forcing =
        config.forcing.value_or(Forcing::zero(fam.dim()));
    const auto grid = evolution::uniform_grid(0.0, config.grid->t_end,
                                              config.grid->points);

    const auto traj = clock.stage("solve", [&] {
        return evolution::solve_cauchy(fam, *config.u0, forcing, grid);
    });

    clock.stage("write", [&] {
        CsvWriter csv(dir / "trajectory.csv", state_header(fam.dim(), "t"));
        for (size_t k = 0; k < traj.grid.size(); ++k) {
            std::vector<std::string> cells{format_double(traj.grid[k])};
            for (const auto& c : complex_vector_cells(traj.states[k]))
                cells.push_back(c);
            csv.row(cells);
        }
        result.outputs.push_back("trajectory.csv");
    });

    if (config.functional.has_value()) {
        const auto report = clock.stage("dual_residual", [&] {
            return topology::dual_residual(traj, fam, forcing,
                                           core::Functional{*config.functional});
        });
        CsvWriter csv(dir / "dual_residual.csv", "t,residual");
        if (report.grid_too_coarse) {
            csv.row({"grid_too_coarse", ""});
        } else {
            for (size_t k = 0; k < report.residuals.size(); ++k)
                csv.row({format_double(traj.grid[k + 1]),
                         format_double(report.residuals[k])});
        }
        result.outputs.push_back("dual_residual.csv");
    }

    if (config.regularized) {
        clock.stage("regularized", [&] {
            const auto cert = logrep::window_certificate(
                fam, grid.front(), config.kappa_margin, config.sweep.N.back());
            CsvWriter csv(dir / "regularized.csv", "t,identity_residual");
            for (double tk : grid) {
                const Vector lhs = logrep::regularized_trajectory(
                    fam, tk, grid.front(), cert, *config.u0);
                const Vector rhs =
                    evolution::evolution_operator(fam, tk, grid.front()).U *
                    (*config.u0);
                csv.row({format_double(tk), format_double((lhs - rhs).norm())});
            }
            result.outputs.push_back("regularized.csv");
        });
    }

    if (config.semigroup_triples > 0) {
        clock.stage("semigroup", [&] {
            std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ull);
            std::uniform_real_distribution<double> uni(grid.front(), grid.back());
            CsvWriter csv(dir / "semigroup.csv", "s,r,t,method,h_step,defect");
            for (int i = 0; i < config.semigroup_triples; ++i) {
                std::array<double, 3> pts{uni(rng), uni(rng), uni(rng)};
                std::sort(pts.begin(), pts.end());
                const double defect_closed =
                    evolution::semigroup_defect(fam, pts[2], pts[1], pts[0]);
                csv.row({format_double(pts[0]), format_double(pts[1]),
                         format_double(pts[2]), "closed_form", "0",
                         format_double(defect_closed)});
                const double h_step = (pts[2] - pts[0]) / 64.0;
                const double defect_stepped = evolution::semigroup_defect(
                    fam, pts[2], pts[1], pts[0], evolution::Method::Stepped,
                    h_step);
                csv.row({format_double(pts[0]), format_double(pts[1]),
                         format_double(pts[2]), "stepped", format_double(h_step),
                         format_double(defect_stepped)});
            }
            result.outputs.push_back("semigroup.csv");
        });
    }
}

void run_topology(const ExperimentConfig& config, const std::filesystem::path& dir,
                  RunResult& result, StageClock& clock) {
    const auto suite = topology::separation_suite();
    static constexpr topology::Topology kOrder[] = {
        topology::Topology::Uniform, topology::Topology::Strong,
        topology::Topology::Weak, topology::Topology::LocallyStrong};

    clock.stage("suite", [&] {
        CsvWriter csv(dir / "topology.csv",
                      "family,topology,verdict,final_residual,n_max");
        for (const auto& item : suite) {
            for (topology::Topology top : kOrder) {
                topology::ConvergenceReport report;
                switch (top) {
                    case topology::Topology::Uniform:
                        report = topology::check_uniform(item.seq, item.probes,
                                                         config.n_max, config.tol);
                        break;
                    case topology::Topology::Strong:
                        report = topology::check_strong(item.seq, item.probes,
                                                        config.n_max, config.tol);
                        break;
                    case topology::Topology::Weak:
                        report = topology::check_weak(item.seq, item.probes,
                                                      config.n_max, config.tol);
                        break;
                    case topology::Topology::LocallyStrong:
                        report = topology::check_locally_strong(
                            item.seq, item.probes.fixed_point, config.n_max,
                            config.tol);
                        break;
                }
                if (report.verdict != item.expected.at(top))
                    result.verdict_ok = false;
                csv.row({item.seq.descriptor, topology::to_string(top),
                         topology::to_string(report.verdict),
                         format_double(report.final_residual()),
                         std::to_string(report.n_max)});
            }
        }
        result.outputs.push_back("topology.csv");
    });
}

} // namespace

const char* to_string(Kind k) {
    switch (k) {
        case Kind::Log:         return "log";
        case Kind::Reconstruct: return "reconstruct";
        case Kind::Evolve:      return "evolve";
        case Kind::Topology:    return "topology";
    }
    return "unknown";
}

Kind kind_from_string(const std::string& s) {
    if (s == "log") return Kind::Log;
    if (s == "reconstruct") return Kind::Reconstruct;
    if (s == "evolve") return Kind::Evolve;
    if (s == "topology") return Kind::Topology;
    throw SchemaError("config.kind: unknown kind '" + s + "'");
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc())
        throw IoError("format_double: conversion failed");
    return std::string(buf, ptr);
}

Matrix random_operator(int dim, std::uint64_t seed, double spectral_radius) {
    if (dim < 1) throw DomainError("random_operator: dim must be >= 1");
    if (!(spectral_radius > 0.0))
        throw DomainError("random_operator: spectral radius must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Matrix G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const double re = uni(rng);
            const double im = uni(rng);
            G(i, k) = core::Complex(re, im);
        }
    const double rho = core::spectral_radius(G);
    if (rho == 0.0)
        throw DomainError("random_operator: degenerate sample");
    return G * (spectral_radius / rho);
}

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw SchemaError("config: expected a JSON object");

    ExperimentConfig config;
    config.schema_version =
        require_int(require_field(doc, "config", "schema_version"),
                    "config.schema_version");
    if (config.schema_version != 1)
        throw SchemaError("config.schema_version: unsupported version");
    config.kind = kind_from_string(
        require_string(require_field(doc, "config", "kind"), "config.kind"));

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() ||
            (doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned() &&
             doc["seed"].get<long long>() < 0))
            throw SchemaError("config.seed: expected a nonnegative integer");
        config.seed = doc["seed"].get<std::uint64_t>();
    }
    config.output_path = doc.contains("output_path")
                             ? require_string(doc["output_path"],
                                              "config.output_path")
                             : std::string(to_string(config.kind));
    if (config.output_path.empty())
        throw SchemaError("config.output_path: must be nonempty");

    config.sweep.h = {1e-3};
    config.sweep.N = {128};
    if (doc.contains("sweep")) {
        const json& sweep = doc["sweep"];
        if (!sweep.is_object()) throw SchemaError("config.sweep: expected an object");
        if (sweep.contains("h")) {
            const json& h = sweep["h"];
            if (!h.is_array() || h.empty())
                throw SchemaError("config.sweep.h: must be a nonempty array");
            config.sweep.h.clear();
            for (size_t i = 0; i < h.size(); ++i) {
                const double v = require_number(
                    h[i], "config.sweep.h[" + std::to_string(i) + "]");
                if (!(v > 0.0))
                    throw SchemaError("config.sweep.h: steps must be positive");
                if (!config.sweep.h.empty() && v >= config.sweep.h.back())
                    throw SchemaError(
                        "config.sweep.h: must be sorted strictly decreasing");
                config.sweep.h.push_back(v);
            }
        }
        if (sweep.contains("N")) {
            const json& N = sweep["N"];
            if (!N.is_array() || N.empty())
                throw SchemaError("config.sweep.N: must be a nonempty array");
            config.sweep.N.clear();
            for (size_t i = 0; i < N.size(); ++i) {
                const int v =
                    require_int(N[i], "config.sweep.N[" + std::to_string(i) + "]");
                if (v < 8)
                    throw SchemaError("config.sweep.N: need at least 8 nodes");
                if (!config.sweep.N.empty() && v <= config.sweep.N.back())
                    throw SchemaError(
                        "config.sweep.N: must be sorted strictly increasing");
                config.sweep.N.push_back(v);
            }
        }
    }

    if (doc.contains("family"))
        config.family = parse_family(doc["family"], "config.family");
    if (doc.contains("t")) config.t = require_number(doc["t"], "config.t");
    if (doc.contains("s")) config.s = require_number(doc["s"], "config.s");
    if (doc.contains("kappa_margin")) {
        config.kappa_margin =
            require_number(doc["kappa_margin"], "config.kappa_margin");
        if (config.kappa_margin < 0.0)
            throw SchemaError("config.kappa_margin: must be >= 0");
    }
    if (doc.contains("richardson")) {
        if (!doc["richardson"].is_boolean())
            throw SchemaError("config.richardson: expected a boolean");
        config.richardson = doc["richardson"].get<bool>();
    }
    if (doc.contains("proof_chain")) {
        if (!doc["proof_chain"].is_boolean())
            throw SchemaError("config.proof_chain: expected a boolean");
        config.proof_chain = doc["proof_chain"].get<bool>();
    }
    if (doc.contains("regularized")) {
        if (!doc["regularized"].is_boolean())
            throw SchemaError("config.regularized: expected a boolean");
        config.regularized = doc["regularized"].get<bool>();
    }
    if (doc.contains("semigroup_triples")) {
        config.semigroup_triples =
            require_int(doc["semigroup_triples"], "config.semigroup_triples");
        if (config.semigroup_triples < 0)
            throw SchemaError("config.semigroup_triples: must be >= 0");
    }

    if (doc.contains("operator")) {
        const json& op = doc["operator"];
        OperatorSpec spec;
        if (op.is_object() && op.contains("random")) {
            const json& rnd = op["random"];
            spec.random_dim = require_int(
                require_field(rnd, "config.operator.random", "dim"),
                "config.operator.random.dim");
            spec.random_spectral_radius = require_number(
                require_field(rnd, "config.operator.random", "spectral_radius"),
                "config.operator.random.spectral_radius");
            if (spec.random_dim < 1 || !(spec.random_spectral_radius > 0.0))
                throw SchemaError("config.operator.random: invalid parameters");
        } else {
            try {
                spec.explicit_op = core::matrix_from_json(op);
            } catch (const SchemaError& e) {
                throw SchemaError(std::string("config.operator: ") + e.what());
            }
        }
        config.op = std::move(spec);
    }

    if (doc.contains("u0")) {
        try {
            config.u0 = core::vector_from_json(doc["u0"]);
        } catch (const SchemaError& e) {
            throw SchemaError(std::string("config.u0: ") + e.what());
        }
    }
    if (doc.contains("forcing")) {
        const json& f = doc["forcing"];
        Forcing forcing;
        forcing.profile =
            parse_alpha(require_field(f, "config.forcing", "profile"),
                        "config.forcing.profile");
        try {
            forcing.direction = core::vector_from_json(
                require_field(f, "config.forcing", "direction"));
        } catch (const SchemaError& e) {
            throw SchemaError(std::string("config.forcing.direction: ") + e.what());
        }
        config.forcing = std::move(forcing);
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        GridSpec grid;
        grid.points = require_int(require_field(g, "config.grid", "points"),
                                  "config.grid.points");
        grid.t_end = require_number(require_field(g, "config.grid", "t_end"),
                                    "config.grid.t_end");
        if (grid.points < 2)
            throw SchemaError("config.grid.points: need at least 2 points");
        if (!(grid.t_end > 0.0))
            throw SchemaError("config.grid.t_end: must be positive");
        config.grid = grid;
    }
    if (doc.contains("functional")) {
        try {
            config.functional = core::vector_from_json(doc["functional"]);
        } catch (const SchemaError& e) {
            throw SchemaError(std::string("config.functional: ") + e.what());
        }
    }
    if (doc.contains("probe")) {
        const json& p = doc["probe"];
        ProbeSpec probe;
        try {
            probe.u_s =
                core::vector_from_json(require_field(p, "config.probe", "u_s"));
        } catch (const SchemaError& e) {
            throw SchemaError(std::string("config.probe.u_s: ") + e.what());
        }
        probe.t = require_number(require_field(p, "config.probe", "t"),
                                 "config.probe.t");
        const json& hs = require_field(p, "config.probe", "h_sequence");
        if (!hs.is_array() || hs.empty())
            throw SchemaError("config.probe.h_sequence: must be a nonempty array");
        for (size_t i = 0; i < hs.size(); ++i)
            probe.h_sequence.push_back(require_number(
                hs[i], "config.probe.h_sequence[" + std::to_string(i) + "]"));
        config.probe = std::move(probe);
    }

    if (doc.contains("n_max")) {
        config.n_max = require_int(doc["n_max"], "config.n_max");
        if (config.n_max < 4) throw SchemaError("config.n_max: must be >= 4");
    }
    if (doc.contains("tol")) {
        config.tol = require_number(doc["tol"], "config.tol");
        if (!(config.tol > 0.0)) throw SchemaError("config.tol: must be positive");
    }

    // Kind-specific requirements.
    switch (config.kind) {
        case Kind::Log:
            if (!config.op.has_value())
                throw SchemaError("config.operator: required for kind 'log'");
            break;
        case Kind::Reconstruct:
            if (!config.family.has_value())
                throw SchemaError("config.family: required for kind 'reconstruct'");
            break;
        case Kind::Evolve:
            if (!config.family.has_value())
                throw SchemaError("config.family: required for kind 'evolve'");
            if (!config.u0.has_value())
                throw SchemaError("config.u0: required for kind 'evolve'");
            if (!config.grid.has_value())
                throw SchemaError("config.grid: required for kind 'evolve'");
            break;
        case Kind::Topology:
            break;
    }

    if (config.family.has_value()) {
        if (config.s < 0.0 || config.t < config.s ||
            config.t > config.family->T_max)
            throw SchemaError("config.t: need 0 <= s <= t <= family.T_max");
        if (config.grid.has_value() &&
            config.grid->t_end > config.family->T_max)
            throw SchemaError("config.grid.t_end: exceeds family.T_max");
        if (config.u0.has_value() &&
            config.u0->size() != config.family->M.rows())
            throw SchemaError("config.u0: dimension mismatch with family.M");
        if (config.functional.has_value() &&
            config.functional->size() != config.family->M.rows())
            throw SchemaError("config.functional: dimension mismatch with family.M");
        if (config.forcing.has_value() &&
            config.forcing->direction.size() != config.family->M.rows())
            throw SchemaError(
                "config.forcing.direction: dimension mismatch with family.M");
        if (config.probe.has_value() &&
            config.probe->u_s.size() != config.family->M.rows())
            throw SchemaError("config.probe.u_s: dimension mismatch with family.M");
    }

    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw SchemaError("config: invalid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    json doc = {
        {"schema_version", config.schema_version},
        {"kind", to_string(config.kind)},
        {"seed", config.seed},
        {"output_path", config.output_path},
        {"sweep", {{"h", config.sweep.h}, {"N", config.sweep.N}}},
        {"t", config.t},
        {"s", config.s},
        {"kappa_margin", config.kappa_margin},
        {"richardson", config.richardson},
        {"proof_chain", config.proof_chain},
        {"regularized", config.regularized},
        {"semigroup_triples", config.semigroup_triples},
        {"n_max", config.n_max},
        {"tol", config.tol},
    };
    if (config.family.has_value())
        doc["family"] = {{"M", core::matrix_to_json(config.family->M)},
                         {"alpha", alpha_to_json(config.family->alpha)},
                         {"T_max", config.family->T_max}};
    if (config.op.has_value()) {
        if (config.op->is_random())
            doc["operator"] = {
                {"random", {{"dim", config.op->random_dim},
                            {"spectral_radius", config.op->random_spectral_radius}}}};
        else
            doc["operator"] = core::matrix_to_json(*config.op->explicit_op);
    }
    if (config.u0.has_value()) doc["u0"] = core::vector_to_json(*config.u0);
    if (config.forcing.has_value())
        doc["forcing"] = {{"profile", alpha_to_json(config.forcing->profile)},
                          {"direction",
                           core::vector_to_json(config.forcing->direction)}};
    if (config.grid.has_value())
        doc["grid"] = {{"points", config.grid->points},
                       {"t_end", config.grid->t_end}};
    if (config.functional.has_value())
        doc["functional"] = core::vector_to_json(*config.functional);
    if (config.probe.has_value())
        doc["probe"] = {{"u_s", core::vector_to_json(config.probe->u_s)},
                        {"t", config.probe->t},
                        {"h_sequence", config.probe->h_sequence}};
    return doc;
}

RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_root,
              bool quiet) {
    const std::filesystem::path dir = out_root / config.output_path;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    RunResult result;
    json timings = json::object();
    StageClock clock(timings);

    if (!quiet)
        std::cout << "loggen: running '" << to_string(config.kind) << "' into "
                  << dir.string() << "\n";

    switch (config.kind) {
        case Kind::Log:         run_log(config, dir, result, clock); break;
        case Kind::Reconstruct: run_reconstruct(config, dir, result, clock); break;
        case Kind::Evolve:      run_evolve(config, dir, result, clock); break;
        case Kind::Topology:    run_topology(config, dir, result, clock); break;
    }

    result.manifest = {
        {"schema_version", 1},
        {"csv_schema_version", 1},
        {"toolkit_version", kToolkitVersion},
        {"kind", to_string(config.kind)},
        {"config", config_to_json(config)},
        {"tolerances", tolerance_table(config)},
        {"timings", timings},
        {"outputs", result.outputs},
    };
    write_json_file(dir / "manifest.json", result.manifest);

    if (!quiet)
        for (const auto& name : result.outputs)
            std::cout << "  wrote " << (dir / name).string() << "\n";
    return result;
}

std::vector<std::filesystem::path> generate_example_configs(
    const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create config directory " + dir.string());

    std::vector<std::filesystem::path> written;
    const auto emit = [&](const std::string& name, const json& doc) {
        const auto path = dir / name;
        write_json_file(path, doc);
        written.push_back(path);
    };

    const json scalar_family = {
        {"M", {{"dim", 1}, {"re", {{1.0}}}, {"im", {{0.0}}}}},
        {"alpha", {{"kind", "constant"}, {"c", 1.0}}},
        {"T_max", 1.2},
    };
    const json nilpotent_family = {
        {"M", {{"dim", 2}, {"re", {{0.0, 1.0}, {0.0, 0.0}}},
               {"im", {{0.0, 0.0}, {0.0, 0.0}}}}},
        {"alpha", {{"kind", "poly"}, {"coeffs", {1.0, 1.0}}}},
        {"T_max", 1.2},
    };
    const json probe_scalar = {
        {"u_s", {{"dim", 1}, {"re", {1.0}}, {"im", {0.0}}}},
        {"t", 0.5},
        {"h_sequence", {1e-3, 1e-4, 1e-5, 2e-6, 1e-6}},
    };
    const json probe_nilpotent = {
        {"u_s", {{"dim", 2}, {"re", {0.0, 1.0}}, {"im", {0.0, 0.0}}}},
        {"t", 0.5},
        {"h_sequence", {1e-3, 1e-4, 1e-5, 2e-6, 1e-6}},
    };

    emit("01_log_roundtrip.json",
         {{"schema_version", 1},
          {"kind", "log"},
          {"seed", 20260810},
          {"output_path", "log_roundtrip"},
          {"operator", {{"random", {{"dim", 6}, {"spectral_radius", 0.9}}}}},
          {"sweep", {{"N", {128}}}},
          {"kappa_margin", 1.0}});

    emit("02_log_quadrature_decay.json",
         {{"schema_version", 1},
          {"kind", "log"},
          {"seed", 20260810},
          {"output_path", "log_quadrature_decay"},
          {"operator", {{"random", {{"dim", 6}, {"spectral_radius", 0.9}}}}},
          {"sweep", {{"N", {16, 32, 64, 128}}}},
          {"kappa_margin", 1.0}});

    emit("03_reconstruct_scalar.json",
         {{"schema_version", 1},
          {"kind", "reconstruct"},
          {"seed", 1},
          {"output_path", "reconstruct_scalar"},
          {"family", scalar_family},
          {"sweep", {{"h", {1e-2, 5e-3, 2.5e-3, 1e-3}}, {"N", {128}}}},
          {"t", 1.0},
          {"s", 0.0},
          {"kappa_margin", 5.0},
          {"proof_chain", true},
          {"probe", probe_scalar}});

    emit("04_reconstruct_nilpotent.json",
         {{"schema_version", 1},
          {"kind", "reconstruct"},
          {"seed", 1},
          {"output_path", "reconstruct_nilpotent"},
          {"family", nilpotent_family},
          {"sweep", {{"h", {1e-2, 5e-3, 2.5e-3, 1e-3}}, {"N", {128}}}},
          {"t", 1.0},
          {"s", 0.0},
          {"kappa_margin", 3.0},
          {"proof_chain", true},
          {"probe", probe_nilpotent}});

    emit("05_evolve_scalar_forced.json",
         {{"schema_version", 1},
          {"kind", "evolve"},
          {"seed", 5},
          {"output_path", "evolve_scalar_forced"},
          {"family", scalar_family},
          {"u0", {{"dim", 1}, {"re", {0.0}}, {"im", {0.0}}}},
          {"forcing",
           {{"profile", {{"kind", "constant"}, {"c", 1.0}}},
            {"direction", {{"dim", 1}, {"re", {1.0}}, {"im", {0.0}}}}}},
          {"grid", {{"points", 256}, {"t_end", 1.0}}},
          {"functional", {{"dim", 1}, {"re", {1.0}}, {"im", {0.0}}}},
          {"regularized", true},
          {"semigroup_triples", 5},
          {"kappa_margin", 5.0}});

    // Commuting 3x3 family with a sinusoidal profile; the matrix is a fixed
    // seeded sample so the config is fully explicit.
    const Matrix M6 = random_operator(3, 7, 0.5);
    emit("06_evolve_commuting_random.json",
         {{"schema_version", 1},
          {"kind", "evolve"},
          {"seed", 6},
          {"output_path", "evolve_commuting_random"},
          {"family",
           {{"M", core::matrix_to_json(M6)},
            {"alpha", {{"kind", "sin"}, {"amp", 0.6}, {"omega", 1.3},
                       {"phase", 0.4}}},
            {"T_max", 1.0}}},
          {"u0", core::vector_to_json(Vector::Ones(3))},
          {"grid", {{"points", 64}, {"t_end", 1.0}}},
          {"regularized", true},
          {"semigroup_triples", 20},
          {"kappa_margin", 3.0}});

    emit("07_topology_suite.json",
         {{"schema_version", 1},
          {"kind", "topology"},
          {"seed", 0},
          {"output_path", "topology_suite"},
          {"n_max", 64},
          {"tol", 1e-8}});

    return written;
}

} // namespace loggen::harness
