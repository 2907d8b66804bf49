#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "loggen/core/errors.hpp"

namespace loggen::core {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd; // dense operator on C^n
using Vector  = Eigen::VectorXcd;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}
inline bool is_finite(const Matrix& T) { return T.allFinite(); }
inline bool is_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Matrix& T, const char* what) {
    if (!T.allFinite())
        throw DomainError(std::string(what) + ": non-finite entry");
}
inline void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite())
        throw DomainError(std::string(what) + ": non-finite entry");
}
inline void require_square(const Matrix& T, const char* what) {
    if (T.rows() != T.cols() || T.rows() == 0)
        throw DimensionError(std::string(what) + ": operator must be square and nonempty");
}

// Continuous linear functional F(x) = <x, representer>.
struct Functional {
    Vector representer;

    Complex operator()(const Vector& x) const;
    double norm() const { return representer.norm(); }
};

} // namespace loggen::core
