#include "loggen/topology/topology.hpp"

#include <algorithm>
#include <cmath>

#include "loggen/core/linalg.hpp"

namespace loggen::topology {

namespace {

using core::Complex;
using core::Vector;
using core::seq_dot;
using core::seq_norm;
using core::seq_sub;
using core::seq_to_dense;

struct Residual {
    double value = 0.0;
    std::string witness;
};

// Verdict rule. Convergence needs the final residual under tol (and an
// exact residual, for the uniform/action case). Divergence needs the whole
// last quarter of residuals at or above 10 tol without a decreasing trend,
// so a slowly decaying sequence reports inconclusive rather than a false
// divergence certificate.
Verdict decide(const std::vector<double>& r, double tol, bool convergence_exact) {
    if (convergence_exact && r.back() <= tol) return Verdict::Converges;
    const size_t q0 = (3 * r.size()) / 4;
    double quarter_min = r[q0];
    for (size_t i = q0; i < r.size(); ++i) quarter_min = std::min(quarter_min, r[i]);
    if (quarter_min >= 10.0 * tol && r.back() >= 0.95 * r[q0])
        return Verdict::Diverges;
    return Verdict::Inconclusive;
}

ConvergenceReport assemble(Topology topology, std::vector<double> residuals,
                           int n_max, double tol, std::string witness,
                           bool convergence_exact) {
    ConvergenceReport report;
    report.topology = topology;
    report.verdict = decide(residuals, tol, convergence_exact);
    report.residuals = std::move(residuals);
    report.n_max = n_max;
    report.tol = tol;
    report.witness = std::move(witness);
    return report;
}

void require_checker_inputs(int n_max, double tol) {
    if (n_max < 4) throw DomainError("convergence checker: n_max must be >= 4");
    if (!(tol > 0.0)) throw DomainError("convergence checker: tol must be positive");
}

// ||(T_n - T) x|| / ||x|| for one probe, either representation.
double probe_residual(const OperatorSequence& seq, int n, const SeqVector& x) {
    const double nx = seq_norm(x);
    if (nx == 0.0) throw DomainError("probe vectors must be nonzero");
    if (seq.is_dense()) {
        const auto& dense = std::get<DenseSequence>(seq.elements);
        const Vector xd = seq_to_dense(x, static_cast<int>(dense.limit.rows()));
        return ((dense.element(n) - dense.limit) * xd).norm() / nx;
    }
    const auto& action = std::get<ActionSequence>(seq.elements);
    const SeqVector diff =
        seq_sub(action.element(n).apply(x), action.limit.apply(x));
    return seq_norm(diff) / nx;
}

Complex pair_value(const OperatorSequence& seq, int n, const SeqVector& x,
                   const SeqVector& f) {
    if (seq.is_dense()) {
        const auto& dense = std::get<DenseSequence>(seq.elements);
        const int dim = static_cast<int>(dense.limit.rows());
        const Vector xd = seq_to_dense(x, dim);
        const Vector fd = seq_to_dense(f, dim);
        return core::dual_product((dense.element(n) - dense.limit) * xd, fd);
    }
    const auto& action = std::get<ActionSequence>(seq.elements);
    const SeqVector diff =
        seq_sub(action.element(n).apply(x), action.limit.apply(x));
    return seq_dot(diff, f);
}

} // namespace

const char* to_string(Topology t) {
    switch (t) {
        case Topology::Uniform:       return "uniform";
        case Topology::Strong:        return "strong";
        case Topology::Weak:          return "weak";
        case Topology::LocallyStrong: return "locally_strong";
    }
    return "unknown";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges:    return "converges";
        case Verdict::Diverges:     return "diverges";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

ProbeSet make_probe_set(std::vector<SeqVector> vectors,
                        std::vector<SeqVector> functionals, SeqVector fixed_point) {
    if (vectors.empty()) throw DomainError("ProbeSet: vectors must be nonempty");
    const bool present = std::any_of(
        vectors.begin(), vectors.end(), [&fixed_point](const SeqVector& v) {
            return v.entries == fixed_point.entries;
        });
    if (!present) vectors.push_back(fixed_point);
    return {std::move(vectors), std::move(functionals), std::move(fixed_point)};
}

ConvergenceReport check_uniform(const OperatorSequence& seq, const ProbeSet& probes,
                                int n_max, double tol) {
    require_checker_inputs(n_max, tol);
    std::vector<double> residuals;
    residuals.reserve(n_max);
    std::string witness = "operator norm";

    if (seq.is_dense()) {
        const auto& dense = std::get<DenseSequence>(seq.elements);
        for (int n = 1; n <= n_max; ++n)
            residuals.push_back(core::operator_norm(dense.element(n) - dense.limit));
        return assemble(Topology::Uniform, std::move(residuals), n_max, tol,
                        std::move(witness), /*convergence_exact=*/true);
    }

    // Action-defined: certified lower bound over the probe vectors plus the
    // canonical basis e_1 .. e_{n_max + n}. The basis range grows with n so
    // witnesses such as a shift acting on e_{n+1} stay visible at n = n_max.
    for (int n = 1; n <= n_max; ++n) {
        Residual best;
        for (size_t i = 0; i < probes.vectors.size(); ++i) {
            const double r = probe_residual(seq, n, probes.vectors[i]);
            if (r > best.value)
                best = {r, "probe[" + std::to_string(i) + "]"};
        }
        for (int k = 1; k <= n_max + n; ++k) {
            const double r = probe_residual(seq, n, SeqVector::basis(k));
            if (r > best.value) best = {r, "basis e_" + std::to_string(k)};
        }
        residuals.push_back(best.value);
        if (n == n_max) witness = best.witness;
    }
    return assemble(Topology::Uniform, std::move(residuals), n_max, tol,
                    std::move(witness), /*convergence_exact=*/false);
}

ConvergenceReport check_strong(const OperatorSequence& seq, const ProbeSet& probes,
                               int n_max, double tol) {
    require_checker_inputs(n_max, tol);
    if (probes.vectors.empty())
        throw DomainError("check_strong: probe vectors must be nonempty");

    std::vector<double> residuals;
    residuals.reserve(n_max);
    std::string witness;
    for (int n = 1; n <= n_max; ++n) {
        Residual best;
        for (size_t i = 0; i < probes.vectors.size(); ++i) {
            const double r = probe_residual(seq, n, probes.vectors[i]);
            if (r >= best.value)
                best = {r, "probe[" + std::to_string(i) + "]"};
        }
        residuals.push_back(best.value);
        if (n == n_max) witness = best.witness;
    }
    return assemble(Topology::Strong, std::move(residuals), n_max, tol,
                    std::move(witness), /*convergence_exact=*/true);
}

ConvergenceReport check_weak(const OperatorSequence& seq, const ProbeSet& probes,
                             int n_max, double tol) {
    require_checker_inputs(n_max, tol);
    if (probes.vectors.empty() || probes.functionals.empty())
        throw DomainError("check_weak: need probe vectors and functionals");

    std::vector<double> residuals;
    residuals.reserve(n_max);
    std::string witness;
    for (int n = 1; n <= n_max; ++n) {
        Residual best;
        for (size_t i = 0; i < probes.vectors.size(); ++i) {
            const double nx = seq_norm(probes.vectors[i]);
            for (size_t j = 0; j < probes.functionals.size(); ++j) {
                const double nf = seq_norm(probes.functionals[j]);
                if (nf == 0.0)
                    throw DomainError("check_weak: functionals must be nonzero");
                const double r =
                    std::abs(pair_value(seq, n, probes.vectors[i],
                                        probes.functionals[j])) /
                    (nx * nf);
                if (r >= best.value)
                    best = {r, "pair (x[" + std::to_string(i) + "], F[" +
                                   std::to_string(j) + "])"};
            }
        }
        residuals.push_back(best.value);
        if (n == n_max) witness = best.witness;
    }
    return assemble(Topology::Weak, std::move(residuals), n_max, tol,
                    std::move(witness), /*convergence_exact=*/true);
}

ConvergenceReport check_locally_strong(const OperatorSequence& seq,
                                       const SeqVector& xbar, int n_max,
                                       double tol) {
    require_checker_inputs(n_max, tol);
    if (seq_norm(xbar) == 0.0)
        throw DomainError("check_locally_strong: x-bar must be nonzero");

    std::vector<double> residuals;
    residuals.reserve(n_max);
    for (int n = 1; n <= n_max; ++n)
        residuals.push_back(probe_residual(seq, n, xbar));
    return assemble(Topology::LocallyStrong, std::move(residuals), n_max, tol,
                    "x-bar", /*convergence_exact=*/true);
}

std::vector<SeparationCase> separation_suite() {
    using core::Complex;
    using core::SeqVector;
    const SeqVector e1 = SeqVector::basis(1);
    const SeqVector e2 = SeqVector::basis(2);
    const SeqVector e3 = SeqVector::basis(3);
    const SeqVector e4 = SeqVector::basis(4);

    std::vector<SeparationCase> suite;

    // Strong converges (finite support is annihilated) while the operator
    // norm stays 1: witness L^n e_{n+1} = e_1.
    {
        OperatorSequence seq{
            "left_shift_pow",
            ActionSequence{[](int n) { return core::left_shift_pow(n); },
                           core::zero_action()}};
        ProbeSet probes = make_probe_set(
            {e1, e2, core::seq_add(e1, core::seq_scale(Complex(1.0 / 3.0, 0.0), e3))},
            {e1, e2, e3, e4}, e2);
        suite.push_back({std::move(seq), std::move(probes),
                         {{Topology::Uniform, Verdict::Diverges},
                          {Topology::Strong, Verdict::Converges},
                          {Topology::Weak, Verdict::Converges},
                          {Topology::LocallyStrong, Verdict::Converges}}});
    }

    // Isometry: every pairing dies out (weak converges) but ||R^n e_1|| = 1
    // for all n (strong diverges at e_1).
    {
        OperatorSequence seq{
            "right_shift_pow",
            ActionSequence{[](int n) { return core::right_shift_pow(n); },
                           core::zero_action()}};
        ProbeSet probes = make_probe_set({e1, e2, e3, e4}, {e1, e2, e3, e4}, e1);
        suite.push_back({std::move(seq), std::move(probes),
                         {{Topology::Uniform, Verdict::Diverges},
                          {Topology::Strong, Verdict::Diverges},
                          {Topology::Weak, Verdict::Converges},
                          {Topology::LocallyStrong, Verdict::Diverges}}});
    }

    // T_n = n <., e_2> e_1: annihilates x-bar = e_1 (locally-strong
    // converges) while the pairing (e_2, e_1) grows like n (weak diverges).
    {
        OperatorSequence seq{
            "scaled_rank_one",
            ActionSequence{[e1, e2](int n) {
                               return core::rank_one_scaled(
                                   Complex(static_cast<double>(n), 0.0), e2, e1);
                           },
                           core::zero_action()}};
        ProbeSet probes = make_probe_set({e1, e2}, {e1}, e1);
        suite.push_back({std::move(seq), std::move(probes),
                         {{Topology::Uniform, Verdict::Diverges},
                          {Topology::Strong, Verdict::Diverges},
                          {Topology::Weak, Verdict::Diverges},
                          {Topology::LocallyStrong, Verdict::Converges}}});
    }

    return suite;
}

double DualResidualReport::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

DualResidualReport dual_residual(const evolution::Trajectory& traj,
                                 const evolution::EvolutionFamily& fam,
                                 const evolution::Forcing& forcing,
                                 const core::Functional& v) {
    DualResidualReport report;
    if (traj.grid.size() < 3) {
        report.grid_too_coarse = true;
        return report;
    }
    if (v.representer.size() != fam.M.rows())
        throw DimensionError("dual_residual: functional dimension mismatch");

    for (size_t k = 1; k + 1 < traj.grid.size(); ++k) {
        const double span = traj.grid[k + 1] - traj.grid[k - 1];
        const Vector du = (traj.states[k + 1] - traj.states[k - 1]) / span;
        const Vector defect =
            du - fam.generator(traj.grid[k]) * traj.states[k] -
            forcing(traj.grid[k]);
        report.residuals.push_back(std::abs(core::dual_product(defect, v.representer)));
    }
    return report;
}

} // namespace loggen::topology
