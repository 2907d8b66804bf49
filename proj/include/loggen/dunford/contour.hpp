#pragma once

#include "loggen/core/linalg.hpp"
#include "loggen/core/types.hpp"

namespace loggen::dunford {

using core::Complex;
using core::Matrix;

// Quadrature-discretized circle in C with nodes
//   lambda_j = center + radius e^{2 pi i j / nodes},  j = 0..nodes-1.
struct Contour {
    Complex center;
    double radius = 0.0;
    int nodes = 0;

    Contour(Complex center_, double radius_, int nodes_);

    Complex offset(int j) const; // radius e^{2 pi i j / nodes}
    Complex node(int j) const { return center + offset(j); }

    // Distance of the origin to the circle as a point set.
    double origin_distance() const { return std::abs(std::abs(center) - radius); }

    // True when the closed disk bounded by the circle meets the ray (-inf, 0].
    bool reaches_branch_cut() const;
};

// Shift certificate for the operator logarithm: kappa together with a
// circle that encloses spectrum(U + kappa I) and keeps the origin outside.
struct KappaCertificate {
    Complex kappa;
    Contour contour;
    double spectral_margin = 0.0; // min distance of spectrum(U + kappa I) to the circle
    double origin_margin = 0.0;   // distance of the origin to the circle
};

// Selection rule: kappa = rho(U) + 1 + margin (real, positive) with the
// circle centered at kappa, radius (rho(U) + kappa) / 2. The circle then
// encloses spectrum(U + kappa I) strictly and lies in the open right
// half-plane, so it excludes the origin and the principal branch cut.
KappaCertificate choose_kappa(const Matrix& U, double margin, int nodes = 128);

// Same rule driven by a spectral-radius bound instead of a concrete
// operator; margins are the conservative values implied by the bound.
// Used when one certificate must cover a whole time window.
KappaCertificate choose_kappa_for_radius(double rho, double margin,
                                         int nodes = 128);

// Validates a caller-supplied kappa/contour pair against U and fills in the
// measured margins. Throws CertificateError when an invariant fails.
KappaCertificate certify(const Matrix& U, Complex kappa, const Contour& contour);

// Re-check: every eigenvalue of U + kappa I strictly inside the circle by
// more than `gap`.
bool certificate_valid_for(const KappaCertificate& cert, const Matrix& U,
                           double gap = 1e-8);

} // namespace loggen::dunford
