#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "loggen/core/sequence.hpp"
#include "loggen/evolution/evolution.hpp"

namespace loggen::topology {

using core::ActionOperator;
using core::Matrix;
using core::SeqVector;

enum class Topology { Uniform, Strong, Weak, LocallyStrong };
enum class Verdict { Converges, Diverges, Inconclusive };

const char* to_string(Topology t);
const char* to_string(Verdict v);

inline constexpr int kDefaultNMax = 64;
inline constexpr double kDefaultTol = 1e-8;

// Sequence of dense operators with its candidate limit.
struct DenseSequence {
    std::function<Matrix(int)> element; // n >= 1
    Matrix limit;
};

// Sequence of action-defined operators on finitely-supported sequences.
struct ActionSequence {
    std::function<ActionOperator(int)> element; // n >= 1
    ActionOperator limit;
};

struct OperatorSequence {
    std::string descriptor;
    std::variant<DenseSequence, ActionSequence> elements;

    bool is_dense() const {
        return std::holds_alternative<DenseSequence>(elements);
    }
};

// Probe material for the strong/weak checkers. Verdicts of those checkers
// are relative to this set: convergence is certified on the probes only,
// while divergence on any probe is a true divergence certificate.
struct ProbeSet {
    std::vector<SeqVector> vectors;
    std::vector<SeqVector> functionals; // representers
    SeqVector fixed_point;              // the distinguished x-bar
};

// Appends x-bar to the vectors when missing, preserving the invariant
// fixed_point in vectors.
ProbeSet make_probe_set(std::vector<SeqVector> vectors,
                        std::vector<SeqVector> functionals, SeqVector fixed_point);

struct ConvergenceReport {
    Topology topology = Topology::Uniform;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<double> residuals; // indexed by n = 1..n_max
    int n_max = 0;
    double tol = 0.0;
    std::string witness; // probe deciding the final residual

    double final_residual() const {
        return residuals.empty() ? 0.0 : residuals.back();
    }
};

// Uniform topology: residual_n is the operator norm of T_n - T, exact for
// dense sequences. For action-defined sequences only a certified lower
// bound is available (sup over probes plus canonical basis vectors), so a
// convergence verdict is never declared there; a lower bound that stays
// large certifies divergence.
ConvergenceReport check_uniform(const OperatorSequence& seq, const ProbeSet& probes,
                                int n_max = kDefaultNMax, double tol = kDefaultTol);

// Strong topology: residual_n = max over probe vectors of ||(T_n - T) x|| / ||x||.
ConvergenceReport check_strong(const OperatorSequence& seq, const ProbeSet& probes,
                               int n_max = kDefaultNMax, double tol = kDefaultTol);

// Weak topology: residual_n = max over pairs of |<(T_n - T) x, F>| / (||x|| ||F||).
ConvergenceReport check_weak(const OperatorSequence& seq, const ProbeSet& probes,
                             int n_max = kDefaultNMax, double tol = kDefaultTol);

// Locally-strong topology: single-vector criterion at x-bar; exact.
ConvergenceReport check_locally_strong(const OperatorSequence& seq,
                                       const SeqVector& xbar,
                                       int n_max = kDefaultNMax,
                                       double tol = kDefaultTol);

// Canonical counterexample family with its probe set and the verdict each
// topology checker is expected to produce.
struct SeparationCase {
    OperatorSequence seq;
    ProbeSet probes;
    std::map<Topology, Verdict> expected;
};

// The three families separating the topology lattice:
//   left_shift_pow:   strong converges, uniform diverges;
//   right_shift_pow:  weak converges, strong diverges at e_1;
//   scaled_rank_one:  locally-strong converges at e_1, weak diverges.
std::vector<SeparationCase> separation_suite();

struct DualResidualReport {
    std::vector<double> residuals; // interior grid points t_1..t_{K-2}
    bool grid_too_coarse = false;

    double max_residual() const;
};

// Pointwise residual of the paired scalar evolution equation along a solved
// trajectory: |<Du - A(t) u - f, v>| with D the central difference on the grid.
DualResidualReport dual_residual(const evolution::Trajectory& traj,
                                 const evolution::EvolutionFamily& fam,
                                 const evolution::Forcing& forcing,
                                 const core::Functional& v);

} // namespace loggen::topology
