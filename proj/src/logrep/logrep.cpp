#include "loggen/logrep/logrep.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace loggen::logrep {

namespace {

using evolution::evolution_operator;

Matrix evolution_matrix(const EvolutionFamily& fam, double t, double s) {
    return evolution_operator(fam, t, s).U;
}

void check_stencil(const EvolutionFamily& fam, double t, double s, double h) {
    if (!(h > 0.0))
        throw DomainError("dt_alt_generator: h must be positive");
    if (t - h < s || t + h > fam.T_max)
        throw DomainError("dt_alt_generator: stencil [t-h, t+h] leaves [s, T_max]");
}

Matrix central_difference(const EvolutionFamily& fam, double t, double s,
                          const KappaCertificate& cert, double h) {
    const Matrix a_plus = alt_generator(fam, t + h, s, cert).a;
    const Matrix a_minus = alt_generator(fam, t - h, s, cert).a;
    return (a_plus - a_minus) / (2.0 * h);
}

// (I - kappa e^{-a})^{-1} B with the singularity guard of the reconstruction.
Matrix invert_log_factor(const Matrix& a, core::Complex kappa, const Matrix& B) {
    const auto n = a.rows();
    const Matrix factor =
        Matrix::Identity(n, n) - kappa * dunford::operator_exp(-a);
    Eigen::PartialPivLU<Matrix> lu(factor);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > core::kResolventConditionMax)
        throw SingularFactorError(
            "reconstruct_generator: (I - kappa e^{-a}) numerically singular; "
            "change kappa");
    return lu.solve(B);
}

} // namespace

KappaCertificate window_certificate(const EvolutionFamily& fam, double s,
                                    double margin, int nodes, int samples) {
    if (samples < 2)
        throw DomainError("window_certificate: need at least two samples");
    double rho_max = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = s + (fam.T_max - s) * i / (samples - 1);
        rho_max = std::max(rho_max,
                           core::spectral_radius(evolution_matrix(fam, t, s)));
    }
    return dunford::choose_kappa_for_radius(rho_max, margin, nodes);
}

AltGenerator alt_generator(const EvolutionFamily& fam, double t, double s,
                           const KappaCertificate& cert) {
    const Matrix U = evolution_matrix(fam, t, s);
    if (!dunford::certificate_valid_for(cert, U))
        throw CertificateError(
            "alt_generator: certificate invalid for U(t, s); re-run choose_kappa "
            "with the worst-case spectral radius over the time window");
    return dunford::operator_log(U, cert);
}

Matrix dt_alt_generator(const EvolutionFamily& fam, double t, double s,
                        const KappaCertificate& cert, double h, bool richardson) {
    check_stencil(fam, t, s, h);
    const Matrix coarse = central_difference(fam, t, s, cert, h);
    if (!richardson) return coarse;
    const Matrix fine = central_difference(fam, t, s, cert, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

ReconstructionReport reconstruct_generator(const EvolutionFamily& fam, double t,
                                           double s, const KappaCertificate& cert,
                                           double h, bool richardson) {
    const AltGenerator gen = alt_generator(fam, t, s, cert);
    const auto reconstruct_once = [&](double step) {
        const Matrix dt_a = dt_alt_generator(fam, t, s, cert, step, richardson);
        return invert_log_factor(gen.a, cert.kappa, dt_a);
    };

    ReconstructionReport report;
    report.t = t;
    report.s = s;
    report.h = h;
    report.nodes = cert.contour.nodes;
    report.A_true = fam.generator(t);
    report.A_hat = reconstruct_once(h);
    report.roundtrip_residual = gen.roundtrip_residual;
    report.error = core::operator_norm(report.A_hat - report.A_true);

    const double error_half =
        core::operator_norm(reconstruct_once(0.5 * h) - report.A_true);
    report.order_estimate =
        (report.error > 0.0 && error_half > 0.0)
            ? std::log2(report.error / error_half)
            : std::numeric_limits<double>::quiet_NaN();
    return report;
}

GeneratorProbe pre_infinitesimal(const EvolutionFamily& fam, double t,
                                 const Vector& u_s,
                                 const std::vector<double>& h_sequence,
                                 double tol) {
    if (u_s.norm() == 0.0)
        throw DomainError("pre_infinitesimal: sample vector must be nonzero");
    if (h_sequence.empty() || !(h_sequence.back() > 0.0))
        throw DomainError("pre_infinitesimal: h-sequence must be nonempty and positive");
    for (size_t i = 0; i + 1 < h_sequence.size(); ++i)
        if (!(h_sequence[i] > h_sequence[i + 1]))
            throw DomainError("pre_infinitesimal: h-sequence must decrease toward 0");
    if (t + h_sequence.front() > fam.T_max)
        throw HorizonError("pre_infinitesimal: t + max(h) exceeds T_max");

    GeneratorProbe probe;
    probe.u_s = u_s;
    probe.t = t;
    probe.h_sequence = h_sequence;

    const auto n = fam.M.rows();
    for (double h : h_sequence) {
        const Matrix U = evolution_matrix(fam, t + h, t);
        probe.limits.push_back((U - Matrix::Identity(n, n)) * u_s / h);
    }

    probe.limit = probe.limits.back();
    if (probe.limits.size() >= 2) {
        const Vector& last = probe.limits[probe.limits.size() - 1];
        const Vector& prev = probe.limits[probe.limits.size() - 2];
        probe.final_delta = (last - prev).norm();
        probe.converged = probe.final_delta <= tol * last.norm();
    }
    return probe;
}

Vector regularized_trajectory(const EvolutionFamily& fam, double t, double s,
                              const KappaCertificate& cert, const Vector& u_s) {
    const AltGenerator gen = alt_generator(fam, t, s, cert);
    const auto n = fam.M.rows();
    const Matrix regularized =
        dunford::operator_exp(gen.a) - cert.kappa * Matrix::Identity(n, n);
    return regularized * u_s;
}

std::vector<std::pair<std::string, double>> proof_chain_check(
    const EvolutionFamily& fam, double t, double s, const KappaCertificate& cert,
    double h) {
    check_stencil(fam, t, s, h);
    const auto n = fam.M.rows();
    const Matrix I = Matrix::Identity(n, n);

    const Matrix U = evolution_matrix(fam, t, s);
    const Matrix dU = (evolution_matrix(fam, t + h, s) -
                       evolution_matrix(fam, t - h, s)) /
                      (2.0 * h);
    Eigen::PartialPivLU<Matrix> lu(U);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > core::kResolventConditionMax)
        throw NearSingularError("proof_chain_check: U(t, s) numerically singular");
    const Matrix lhs = lu.solve(dU); // U^{-1} dU/dt

    const AltGenerator gen = alt_generator(fam, t, s, cert);
    const Matrix dt_a = dt_alt_generator(fam, t, s, cert, h);
    const Matrix exp_a = dunford::operator_exp(gen.a);

    // (I + kappa (e^a - kappa I)^{-1}) da/dt
    Eigen::PartialPivLU<Matrix> lu_shift(exp_a - cert.kappa * I);
    const double rcond_shift = lu_shift.rcond();
    if (!(rcond_shift > 0.0) || 1.0 / rcond_shift > core::kResolventConditionMax)
        throw SingularFactorError(
            "proof_chain_check: (e^a - kappa I) numerically singular");
    const Matrix resolvent_form = dt_a + cert.kappa * lu_shift.solve(dt_a);

    // (I - kappa e^{-a})^{-1} da/dt
    const Matrix exponential_form = invert_log_factor(gen.a, cert.kappa, dt_a);

    return {
        {"inverse_vs_resolvent_form",
         core::operator_norm(lhs - resolvent_form)},
        {"inverse_vs_exponential_form",
         core::operator_norm(lhs - exponential_form)},
    };
}

} // namespace loggen::logrep
