#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loggen/dunford/calculus.hpp"
#include "loggen/evolution/evolution.hpp"

namespace loggen::logrep {

using core::Matrix;
using core::Vector;
using dunford::AltGenerator;
using dunford::KappaCertificate;
using evolution::EvolutionFamily;

// One certificate covering the worst-case spectral radius of U(t, s) over
// t in [s, T_max], sampled on a uniform grid. Keeping kappa and the contour
// fixed across a differencing stencil is what makes d/dt of the logarithm
// meaningful.
KappaCertificate window_certificate(const EvolutionFamily& fam, double s,
                                    double margin, int nodes = 128,
                                    int samples = 129);

// a(t, s) = Log(U(t, s) + kappa I). The certificate is re-validated for the
// concrete U(t, s) before the contour integral runs.
AltGenerator alt_generator(const EvolutionFamily& fam, double t, double s,
                           const KappaCertificate& cert);

// Central difference (a(t+h, s) - a(t-h, s)) / 2h, O(h^2); with richardson,
// (4 D_{h/2} - D_h) / 3, O(h^4). The stencil must stay inside [s, T_max].
Matrix dt_alt_generator(const EvolutionFamily& fam, double t, double s,
                        const KappaCertificate& cert, double h,
                        bool richardson = false);

struct ReconstructionReport {
    double t = 0.0;
    double s = 0.0;
    double h = 0.0;
    int nodes = 0;
    Matrix A_hat;
    Matrix A_true;
    double error = 0.0;             // ||A_hat - A_true||
    double order_estimate = 0.0;    // log2(error(h) / error(h/2))
    double roundtrip_residual = 0.0;
};

// Generator recovered from the logarithm:
//   A_hat = (I - kappa e^{-a})^{-1} d/dt a(t, s),
// compared against the family's A(t) = alpha(t) M.
ReconstructionReport reconstruct_generator(const EvolutionFamily& fam, double t,
                                           double s, const KappaCertificate& cert,
                                           double h, bool richardson = false);

struct GeneratorProbe {
    Vector u_s;
    double t = 0.0;
    std::vector<double> h_sequence;   // strictly decreasing toward 0
    std::vector<Vector> limits;       // finite-difference images per h
    bool converged = false;           // Cauchy criterion verdict, not an error
    double final_delta = 0.0;         // last successive relative difference
    Vector limit;                     // last image
};

// Difference-quotient probe h^{-1} (U(t+h, t) - I) u_s over a decreasing
// h-sequence; convergence is declared when successive images differ by at
// most tol * ||latest||.
GeneratorProbe pre_infinitesimal(const EvolutionFamily& fam, double t,
                                 const Vector& u_s,
                                 const std::vector<double>& h_sequence,
                                 double tol = 1e-6);

// (e^{a(t,s)} - kappa I) u_s, equal to U(t, s) u_s up to the functional-
// calculus round-trip residual.
Vector regularized_trajectory(const EvolutionFamily& fam, double t, double s,
                              const KappaCertificate& cert, const Vector& u_s);

// Residuals of the identities linking U^{-1} dU/dt to the two logarithmic
// forms (I + kappa (e^a - kappa I)^{-1}) da/dt and (I - kappa e^{-a})^{-1} da/dt.
std::vector<std::pair<std::string, double>> proof_chain_check(
    const EvolutionFamily& fam, double t, double s, const KappaCertificate& cert,
    double h);

} // namespace loggen::logrep
