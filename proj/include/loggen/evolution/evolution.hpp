#pragma once

#include <functional>
#include <vector>

#include "loggen/evolution/family.hpp"

namespace loggen::evolution {

enum class Method { ClosedForm, Stepped };

struct EvolutionOperator {
    Matrix U;
    double t = 0.0;
    double s = 0.0;
    Method method = Method::ClosedForm;
    int step_count = 0; // 0 for closed form
};

// Adaptive Simpson integral of alpha over [s, t], absolute tolerance 1e-14.
double integrate_alpha(const AlphaProfile& alpha, double s, double t);

// Two-parameter evolution operator of the commuting family.
//   ClosedForm: U = exp((int_s^t alpha) M) with the integral by adaptive
//               quadrature.
//   Stepped:    classical 4th-order integration of dU/dt = A(t) U with
//               fixed step h_step (0 picks (t - s) / 256); the step is
//               uniformized so the last step lands exactly on t.
EvolutionOperator evolution_operator(const EvolutionFamily& fam, double t,
                                     double s, Method method = Method::ClosedForm,
                                     double h_step = 0.0);

// ||U(t,s) - U(t,r) U(r,s)|| for s <= r <= t.
double semigroup_defect(const EvolutionFamily& fam, double t, double r, double s,
                        Method method = Method::ClosedForm, double h_step = 0.0);

struct Trajectory {
    std::vector<double> grid;
    std::vector<Vector> states;
    EvolutionFamily source;
    Forcing forcing;
};

// Duhamel solution u(t_k) = U(t_k, t_0) u0 + int_{t_0}^{t_k} U(t_k, r) f(r) dr
// with the integral by composite Simpson on the grid refined 4x.
Trajectory solve_cauchy(const EvolutionFamily& fam, const Vector& u0,
                        const Forcing& forcing, const std::vector<double>& grid);

std::vector<double> uniform_grid(double t0, double t1, int points);

} // namespace loggen::evolution
