#include "loggen/dunford/calculus.hpp"

#include <array>
#include <cmath>
#include <span>

#include <Eigen/LU>

#include "loggen/core/serialize.hpp"

namespace loggen::dunford {

namespace {

using core::Vector;

// Pade numerator coefficients b_0..b_m for degrees 3/5/7/9/13 and the
// 1-norm thresholds theta_m of the scaling-and-squaring method.
constexpr std::array<double, 4> kB3{120., 60., 12., 1.};
constexpr std::array<double, 6> kB5{30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kB7{17297280., 8648640., 1995840., 277200.,
                                    25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kB9{17643225600., 8821612800., 2075673600.,
                                     302702400.,   30270240.,   2162160.,
                                     110880.,      3960.,       90.,
                                     1.};
constexpr std::array<double, 14> kB13{
    64764752532480000., 32382376266240000., 7771770303897600.,
    1187353796428800.,  129060195264000.,   10559470521600.,
    670442572800.,      33522128640.,       1323241920.,
    40840800.,          960960.,            16380.,
    182.,               1.};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const Matrix& A) {
    return A.cwiseAbs().colwise().sum().maxCoeff();
}

Matrix pade_solve(const Matrix& U, const Matrix& V) {
    Eigen::PartialPivLU<Matrix> lu(V - U);
    return lu.solve(V + U);
}

Matrix pade_low(const Matrix& A, std::span<const double> b) {
    const auto n = A.rows();
    const Matrix I = Matrix::Identity(n, n);
    const Matrix A2 = A * A;
    Matrix U, V;
    switch (b.size()) {
        case 4: // degree 3
            U = A * (b[3] * A2 + b[1] * I);
            V = b[2] * A2 + b[0] * I;
            break;
        case 6: { // degree 5
            const Matrix A4 = A2 * A2;
            U = A * (b[5] * A4 + b[3] * A2 + b[1] * I);
            V = b[4] * A4 + b[2] * A2 + b[0] * I;
            break;
        }
        case 8: { // degree 7
            const Matrix A4 = A2 * A2;
            const Matrix A6 = A4 * A2;
            U = A * (b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
            V = b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
            break;
        }
        default: { // degree 9
            const Matrix A4 = A2 * A2;
            const Matrix A6 = A4 * A2;
            const Matrix A8 = A6 * A2;
            U = A * (b[9] * A8 + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
            V = b[8] * A8 + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
            break;
        }
    }
    return pade_solve(U, V);
}

Matrix pade13(const Matrix& A) {
    const auto n = A.rows();
    const Matrix I = Matrix::Identity(n, n);
    const Matrix A2 = A * A;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A4 * A2;
    const auto& b = kB13;
    const Matrix U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
             b[5] * A4 + b[3] * A2 + b[1] * I);
    const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                     b[4] * A4 + b[2] * A2 + b[0] * I;
    return pade_solve(U, V);
}

} // namespace

Matrix dunford_apply(const std::function<Complex(Complex)>& f, const Matrix& T,
                     const Contour& contour) {
    core::require_square(T, "dunford_apply");
    core::require_finite(T, "dunford_apply");

    for (Complex mu : core::spectrum(T)) {
        const double gap = contour.radius - std::abs(mu - contour.center);
        if (gap < kContainmentGap)
            throw NonContainmentError(
                "dunford_apply: an eigenvalue touches or escapes the contour");
    }

    const auto n = T.rows();
    const Matrix I = Matrix::Identity(n, n);
    Matrix sum = Matrix::Zero(n, n);
    for (int j = 0; j < contour.nodes; ++j) {
        const Complex lambda = contour.node(j);
        // (1/2 pi i) f(lambda) R(lambda) d(lambda)/d(theta) (2 pi / N)
        // collapses to f(lambda) R(lambda) (lambda - center) / N.
        const Complex weight = f(lambda) * contour.offset(j) /
                               static_cast<double>(contour.nodes);
        sum += weight * core::resolvent_apply(T, lambda, I);
    }
    return sum;
}

Matrix operator_exp(const Matrix& A) {
    core::require_square(A, "operator_exp");
    core::require_finite(A, "operator_exp");
    if (core::operator_norm(A) > kExpNormMax)
        throw OverflowError("operator_exp: ||A|| > 700, exponential range exhausted");

    const double nrm = one_norm(A);
    if (nrm <= kTheta3) return pade_low(A, kB3);
    if (nrm <= kTheta5) return pade_low(A, kB5);
    if (nrm <= kTheta7) return pade_low(A, kB7);
    if (nrm <= kTheta9) return pade_low(A, kB9);

    const int squarings =
        std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
    Matrix E = pade13(A / std::exp2(squarings));
    for (int i = 0; i < squarings; ++i) E = E * E;
    return E;
}

AltGenerator operator_log(const Matrix& U, const KappaCertificate& cert) {
    core::require_square(U, "operator_log");
    core::require_finite(U, "operator_log");
    if (cert.contour.reaches_branch_cut())
        throw BranchCutError(
            "operator_log: contour disk reaches the branch cut (-inf, 0]");
    if (!certificate_valid_for(cert, U))
        throw CertificateError(
            "operator_log: spectrum of U + kappa I escapes the certificate contour");

    const auto n = U.rows();
    const Matrix shifted = U + cert.kappa * Matrix::Identity(n, n);
    Matrix a = dunford_apply([](Complex z) { return std::log(z); }, shifted,
                             cert.contour);
    const double residual = core::operator_norm(operator_exp(a) - shifted);
    return AltGenerator{std::move(a), cert, residual};
}

nlohmann::json alt_generator_to_json(const AltGenerator& gen) {
    return {
        {"a", core::matrix_to_json(gen.a)},
        {"certificate",
         {{"kappa", {{"re", gen.certificate.kappa.real()},
                     {"im", gen.certificate.kappa.imag()}}},
          {"contour", {{"center_re", gen.certificate.contour.center.real()},
                       {"center_im", gen.certificate.contour.center.imag()},
                       {"radius", gen.certificate.contour.radius},
                       {"nodes", gen.certificate.contour.nodes}}},
          {"spectral_margin", gen.certificate.spectral_margin},
          {"origin_margin", gen.certificate.origin_margin}}},
        {"roundtrip_residual", gen.roundtrip_residual},
    };
}

} // namespace loggen::dunford
