#include "loggen/dunford/contour.hpp"

#include <cmath>
#include <numbers>

namespace loggen::dunford {

Contour::Contour(Complex center_, double radius_, int nodes_)
    : center(center_), radius(radius_), nodes(nodes_) {
    if (!core::is_finite(center))
        throw DomainError("Contour: center must be finite");
    if (!(radius > 0.0))
        throw DomainError("Contour: radius must be positive");
    if (nodes < 8)
        throw DomainError("Contour: at least 8 quadrature nodes required");
}

Complex Contour::offset(int j) const {
    const double theta = 2.0 * std::numbers::pi * j / nodes;
    return radius * Complex(std::cos(theta), std::sin(theta));
}

bool Contour::reaches_branch_cut() const {
    // Distance of the ray (-inf, 0] to the center.
    const double dist = center.real() <= 0.0 ? std::abs(center.imag())
                                             : std::abs(center);
    return dist <= radius;
}

KappaCertificate choose_kappa_for_radius(double rho, double margin, int nodes) {
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw DomainError("choose_kappa_for_radius: rho must be finite and >= 0");
    if (!(margin >= 0.0) || !std::isfinite(margin))
        throw DomainError("choose_kappa_for_radius: margin must be finite and >= 0");
    const double kappa = rho + 1.0 + margin;
    const double radius = (rho + kappa) / 2.0;
    Contour circle(Complex(kappa, 0.0), radius, nodes);
    // spectrum(U + kappa I) lies in disk(kappa, rho), so the circle clears it
    // by at least radius - rho; the origin by kappa - radius.
    return {Complex(kappa, 0.0), circle, radius - rho, kappa - radius};
}

KappaCertificate choose_kappa(const Matrix& U, double margin, int nodes) {
    core::require_square(U, "choose_kappa");
    core::require_finite(U, "choose_kappa");
    KappaCertificate cert =
        choose_kappa_for_radius(core::spectral_radius(U), margin, nodes);
    // Tighten the spectral margin to the measured one.
    double measured = cert.contour.radius;
    for (Complex mu : core::spectrum(U)) {
        const double dist =
            cert.contour.radius - std::abs(mu + cert.kappa - cert.contour.center);
        measured = std::min(measured, dist);
    }
    cert.spectral_margin = measured;
    return cert;
}

KappaCertificate certify(const Matrix& U, Complex kappa, const Contour& contour) {
    core::require_square(U, "certify");
    core::require_finite(U, "certify");
    if (kappa == Complex(0.0, 0.0))
        throw CertificateError("certify: kappa must be nonzero");

    double spectral_margin = contour.radius;
    for (Complex mu : core::spectrum(U)) {
        const double dist = contour.radius - std::abs(mu + kappa - contour.center);
        spectral_margin = std::min(spectral_margin, dist);
    }
    if (!(spectral_margin > 0.0))
        throw CertificateError(
            "certify: spectrum of U + kappa I is not strictly inside the circle");

    if (std::abs(contour.center) <= contour.radius)
        throw CertificateError("certify: origin is not outside the circle");
    const double origin_margin = std::abs(contour.center) - contour.radius;

    return {kappa, contour, spectral_margin, origin_margin};
}

bool certificate_valid_for(const KappaCertificate& cert, const Matrix& U,
                           double gap) {
    for (Complex mu : core::spectrum(U)) {
        const double dist =
            cert.contour.radius - std::abs(mu + cert.kappa - cert.contour.center);
        if (dist <= gap) return false;
    }
    return true;
}

} // namespace loggen::dunford
