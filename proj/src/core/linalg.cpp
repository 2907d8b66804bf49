#include "loggen/core/linalg.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace loggen::core {

Complex Functional::operator()(const Vector& x) const {
    return dual_product(x, representer);
}

double operator_norm(const Matrix& T) {
    require_square(T, "operator_norm");
    require_finite(T, "operator_norm");
    Eigen::JacobiSVD<Matrix> svd(T);
    return svd.singularValues()(0);
}

std::vector<Complex> spectrum(const Matrix& T) {
    require_square(T, "spectrum");
    require_finite(T, "spectrum");
    Eigen::ComplexEigenSolver<Matrix> es(T, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw EigensolverError("spectrum: eigensolver did not converge");
    std::vector<Complex> vals(es.eigenvalues().data(),
                              es.eigenvalues().data() + T.rows());
    std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return vals;
}

double spectral_radius(const Matrix& T) {
    double rho = 0.0;
    for (Complex lambda : spectrum(T)) rho = std::max(rho, std::abs(lambda));
    return rho;
}

Eigenpairs eigenpairs(const Matrix& T) {
    require_square(T, "eigenpairs");
    require_finite(T, "eigenpairs");
    Eigen::ComplexEigenSolver<Matrix> es(T, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw EigensolverError("eigenpairs: eigensolver did not converge");
    Eigenpairs out;
    out.values.assign(es.eigenvalues().data(),
                      es.eigenvalues().data() + T.rows());
    out.vectors = es.eigenvectors();
    return out;
}

Matrix resolvent_apply(const Matrix& T, Complex lambda, const Matrix& B) {
    require_square(T, "resolvent_apply");
    require_finite(T, "resolvent_apply");
    if (!is_finite(lambda))
        throw DomainError("resolvent_apply: lambda must be finite");
    if (B.rows() != T.rows())
        throw DimensionError("resolvent_apply: row count of B must match T");

    const auto n = T.rows();
    Matrix shifted = lambda * Matrix::Identity(n, n) - T;
    Eigen::PartialPivLU<Matrix> lu(shifted);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > kResolventConditionMax)
        throw NearSingularError(
            "resolvent_apply: lambda too close to the spectrum "
            "(condition estimate above 1e12)");
    return lu.solve(B);
}

Complex dual_product(const Vector& x, const Vector& y) {
    if (x.size() != y.size())
        throw DimensionError("dual_product: vectors must have equal dimension");
    return y.dot(x); // Eigen dot conjugates its first argument
}

} // namespace loggen::core
