#pragma once

#include <vector>

#include "loggen/core/types.hpp"

namespace loggen::core {

// Condition-estimate ceiling for all factorization-based solves. A solve
// whose estimated condition number exceeds this throws NearSingularError.
inline constexpr double kResolventConditionMax = 1e12;

// Operator norm on (C^n, ||.||_2): the largest singular value.
double operator_norm(const Matrix& T);

// All eigenvalues with multiplicity, sorted by (Re, Im).
std::vector<Complex> spectrum(const Matrix& T);

double spectral_radius(const Matrix& T);

struct Eigenpairs {
    std::vector<Complex> values; // solver order, matching vector columns
    Matrix vectors;
};
Eigenpairs eigenpairs(const Matrix& T);

// Solves (lambda I - T) R = B by LU with partial pivoting, never by
// explicit inversion. Throws NearSingularError when the condition
// estimate exceeds kResolventConditionMax.
Matrix resolvent_apply(const Matrix& T, Complex lambda, const Matrix& B);

// Sesquilinear pairing sum_i x_i conj(y_i).
Complex dual_product(const Vector& x, const Vector& y);

} // namespace loggen::core
