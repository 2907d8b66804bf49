#include "loggen/evolution/evolution.hpp"

#include <cmath>

#include "loggen/dunford/calculus.hpp"

namespace loggen::evolution {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double eps) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(f, a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, 48);
}

void check_window(const EvolutionFamily& fam, double t, double s,
                  const char* what) {
    if (s < 0.0 || t > fam.T_max)
        throw HorizonError(std::string(what) + ": time outside [0, T_max]");
    if (t < s)
        throw OrderingError(std::string(what) + ": t must satisfy s <= t");
}

Matrix stepped_evolution(const EvolutionFamily& fam, double t, double s,
                         double h_step, int& step_count) {
    const auto n = fam.M.rows();
    Matrix U = Matrix::Identity(n, n);
    if (t == s) {
        step_count = 0;
        return U;
    }
    if (h_step <= 0.0) h_step = (t - s) / 256.0;
    const int steps =
        std::max(1, static_cast<int>(std::ceil((t - s) / h_step - 1e-12)));
    const double h = (t - s) / steps;
    for (int i = 0; i < steps; ++i) {
        const double ti = s + i * h;
        const Matrix k1 = fam.alpha(ti) * (fam.M * U);
        const Matrix k2 = fam.alpha(ti + 0.5 * h) * (fam.M * (U + 0.5 * h * k1));
        const Matrix k3 = fam.alpha(ti + 0.5 * h) * (fam.M * (U + 0.5 * h * k2));
        const Matrix k4 = fam.alpha(ti + h) * (fam.M * (U + h * k3));
        U += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    step_count = steps;
    return U;
}

} // namespace

double integrate_alpha(const AlphaProfile& alpha, double s, double t) {
    return adaptive_simpson([&alpha](double r) { return alpha(r); }, s, t, 1e-14);
}

EvolutionOperator evolution_operator(const EvolutionFamily& fam, double t,
                                     double s, Method method, double h_step) {
    core::require_square(fam.M, "evolution_operator");
    core::require_finite(fam.M, "evolution_operator");
    check_window(fam, t, s, "evolution_operator");

    const auto n = fam.M.rows();
    if (t == s)
        return {Matrix::Identity(n, n), t, s, method, 0};

    if (method == Method::ClosedForm) {
        const double theta = integrate_alpha(fam.alpha, s, t);
        return {dunford::operator_exp(theta * fam.M), t, s, method, 0};
    }
    int steps = 0;
    Matrix U = stepped_evolution(fam, t, s, h_step, steps);
    return {std::move(U), t, s, method, steps};
}

double semigroup_defect(const EvolutionFamily& fam, double t, double r, double s,
                        Method method, double h_step) {
    if (!(s <= r && r <= t))
        throw OrderingError("semigroup_defect: need s <= r <= t");
    const Matrix U_ts = evolution_operator(fam, t, s, method, h_step).U;
    const Matrix U_tr = evolution_operator(fam, t, r, method, h_step).U;
    const Matrix U_rs = evolution_operator(fam, r, s, method, h_step).U;
    return core::operator_norm(U_ts - U_tr * U_rs);
}

Trajectory solve_cauchy(const EvolutionFamily& fam, const Vector& u0,
                        const Forcing& forcing, const std::vector<double>& grid) {
    core::require_square(fam.M, "solve_cauchy");
    if (u0.size() != fam.M.rows())
        throw DimensionError("solve_cauchy: u0 dimension must match the family");
    if (forcing.direction.size() != fam.M.rows())
        throw DimensionError("solve_cauchy: forcing dimension must match the family");
    if (grid.size() < 1)
        throw DomainError("solve_cauchy: grid must be nonempty");
    for (size_t k = 0; k + 1 < grid.size(); ++k)
        if (!(grid[k] < grid[k + 1]))
            throw DomainError("solve_cauchy: grid must be strictly increasing");
    check_window(fam, grid.back(), grid.front(), "solve_cauchy");

    Trajectory traj;
    traj.grid = grid;
    traj.source = fam;
    traj.forcing = forcing;
    traj.states.reserve(grid.size());
    traj.states.push_back(u0);

    const bool forced = forcing.direction.norm() > 0.0;
    Vector u = u0;
    for (size_t k = 1; k < grid.size(); ++k) {
        const double a = grid[k - 1];
        const double b = grid[k];
        const Matrix U_cell = evolution_operator(fam, b, a).U;
        u = U_cell * u;

        if (forced) {
            // Composite Simpson over the cell refined 4x: step (b-a)/4.
            const double h4 = (b - a) / 4.0;
            static constexpr double w[5] = {1.0, 4.0, 2.0, 4.0, 1.0};
            Vector quad = Vector::Zero(u0.size());
            for (int i = 0; i <= 4; ++i) {
                const double r = a + i * h4;
                quad += w[i] * (evolution_operator(fam, b, r).U * forcing(r));
            }
            u += (h4 / 3.0) * quad;
        }
        traj.states.push_back(u);
    }
    return traj;
}

std::vector<double> uniform_grid(double t0, double t1, int points) {
    if (points < 1) throw DomainError("uniform_grid: need at least one point");
    if (points == 1) return {t0};
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = t0 + (t1 - t0) * i / (points - 1);
    return g;
}

} // namespace loggen::evolution
