#include "loggen/evolution/family.hpp"

#include <cmath>

namespace loggen::evolution {

double AlphaProfile::operator()(double t) const {
    switch (kind) {
        case Kind::Constant:
            return constant;
        case Kind::Polynomial: {
            double v = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                v = v * t + *it;
            return v;
        }
        case Kind::Sinusoid:
            return amplitude * std::sin(omega * t + phase);
        case Kind::Exponential:
            return scale * std::exp(growth * t);
    }
    return 0.0;
}

AlphaProfile AlphaProfile::make_constant(double c) {
    AlphaProfile p;
    p.kind = Kind::Constant;
    p.constant = c;
    return p;
}

AlphaProfile AlphaProfile::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty())
        throw DomainError("AlphaProfile::polynomial: coefficient list empty");
    AlphaProfile p;
    p.kind = Kind::Polynomial;
    p.coeffs = std::move(coeffs);
    return p;
}

AlphaProfile AlphaProfile::sinusoid(double amplitude, double omega, double phase) {
    AlphaProfile p;
    p.kind = Kind::Sinusoid;
    p.amplitude = amplitude;
    p.omega = omega;
    p.phase = phase;
    return p;
}

AlphaProfile AlphaProfile::exponential(double scale, double growth) {
    AlphaProfile p;
    p.kind = Kind::Exponential;
    p.scale = scale;
    p.growth = growth;
    return p;
}

Forcing Forcing::zero(int dim) {
    return Forcing{AlphaProfile::make_constant(0.0), Vector::Zero(dim)};
}

} // namespace loggen::evolution
