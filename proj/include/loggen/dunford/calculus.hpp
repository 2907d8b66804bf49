#pragma once

#include <functional>

#include "json.hpp"

#include "loggen/dunford/contour.hpp"

namespace loggen::dunford {

// Eigenvalues closer than this to the circle abort the quadrature.
inline constexpr double kContainmentGap = 1e-8;

// Norm ceiling for operator_exp; beyond this e^{||A||} exhausts doubles.
inline constexpr double kExpNormMax = 700.0;

// f(T) = (1 / 2 pi i) sum_j f(lambda_j) (lambda_j I - T)^{-1} lambda'_j (2 pi / N),
// the trapezoid rule on the circle. Spectrally accurate for f analytic on a
// neighborhood of the closed disk; the sum runs in fixed node order so the
// result is bit-reproducible.
Matrix dunford_apply(const std::function<Complex(Complex)>& f, const Matrix& T,
                     const Contour& contour);

// Scaling-and-squaring with diagonal Pade approximants.
Matrix operator_exp(const Matrix& A);

// a = Log(U + kappa I), bounded even when the generator it encodes is not.
struct AltGenerator {
    Matrix a;
    KappaCertificate certificate;
    double roundtrip_residual = 0.0; // ||e^a - (U + kappa I)||
};

// Principal-branch operator logarithm of U + kappa I through the contour
// integral. Records the exp round-trip residual as the certificate of the
// computed value.
AltGenerator operator_log(const Matrix& U, const KappaCertificate& cert);

nlohmann::json alt_generator_to_json(const AltGenerator& gen);

} // namespace loggen::dunford
