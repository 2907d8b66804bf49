#pragma once

#include <vector>

#include "loggen/core/types.hpp"

namespace loggen::evolution {

using core::Matrix;
using core::Vector;

// Named scalar time profile. Restricting alpha to this set keeps configs
// declarative and keeps a closed-form antiderivative available to tests.
struct AlphaProfile {
    enum class Kind { Constant, Polynomial, Sinusoid, Exponential };

    Kind kind = Kind::Constant;
    double constant = 0.0;
    std::vector<double> coeffs;  // ascending powers
    double amplitude = 1.0;      // amplitude * sin(omega t + phase)
    double omega = 1.0;
    double phase = 0.0;
    double scale = 1.0;          // scale * exp(growth t)
    double growth = 0.0;

    double operator()(double t) const;

    static AlphaProfile make_constant(double c);
    static AlphaProfile polynomial(std::vector<double> coeffs);
    static AlphaProfile sinusoid(double amplitude, double omega, double phase);
    static AlphaProfile exponential(double scale, double growth);
};

// Commuting generator family A(t) = alpha(t) M on [0, T_max]. The shared
// structure matrix makes A(t)A(r) = A(r)A(t) automatic and admits the
// closed-form evolution operator exp((int_s^t alpha) M).
struct EvolutionFamily {
    Matrix M;
    AlphaProfile alpha;
    double T_max = 1.0;

    int dim() const { return static_cast<int>(M.rows()); }
    Matrix generator(double t) const { return alpha(t) * M; }
};

// Inhomogeneity f(t) = profile(t) * direction.
struct Forcing {
    AlphaProfile profile;
    Vector direction;

    static Forcing zero(int dim);
    Vector operator()(double t) const { return profile(t) * direction; }
};

} // namespace loggen::evolution
