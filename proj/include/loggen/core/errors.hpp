#pragma once

#include <stdexcept>
#include <string>

namespace loggen {

// Error taxonomy shared by every module. The kind maps onto the CLI
// process exit codes: schema violation 2, numerical failure 3, io failure 4.
enum class ErrorKind { Schema, Numerical, Io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    int exit_code() const noexcept {
        switch (kind_) {
            case ErrorKind::Schema:    return 2;
            case ErrorKind::Numerical: return 3;
            case ErrorKind::Io:        return 4;
        }
        return 3;
    }

    const char* kind_name() const noexcept {
        switch (kind_) {
            case ErrorKind::Schema:    return "schema-violation";
            case ErrorKind::Numerical: return "numerical-failure";
            case ErrorKind::Io:        return "io-failure";
        }
        return "numerical-failure";
    }

private:
    ErrorKind kind_;
};

#define LOGGEN_DEFINE_ERROR(NAME, KIND)              \
    class NAME : public Error {                      \
    public:                                          \
        explicit NAME(const std::string& msg)        \
            : Error(ErrorKind::KIND, msg) {}         \
    }

LOGGEN_DEFINE_ERROR(DimensionError, Numerical);      // operand shapes disagree
LOGGEN_DEFINE_ERROR(NearSingularError, Numerical);   // solve condition estimate above threshold
LOGGEN_DEFINE_ERROR(EigensolverError, Numerical);    // eigensolver failed to converge
LOGGEN_DEFINE_ERROR(NonContainmentError, Numerical); // spectrum touches or escapes the contour
LOGGEN_DEFINE_ERROR(BranchCutError, Numerical);      // contour disk reaches (-inf, 0]
LOGGEN_DEFINE_ERROR(CertificateError, Numerical);    // kappa certificate invalid for the operator
LOGGEN_DEFINE_ERROR(OverflowError, Numerical);       // exponential range exhausted
LOGGEN_DEFINE_ERROR(HorizonError, Numerical);        // time outside [0, T_max]
LOGGEN_DEFINE_ERROR(OrderingError, Numerical);       // s <= r <= t violated
LOGGEN_DEFINE_ERROR(DomainError, Numerical);         // invalid argument / stencil leaves the window
LOGGEN_DEFINE_ERROR(SingularFactorError, Numerical); // (I - kappa e^{-a}) numerically singular
LOGGEN_DEFINE_ERROR(SchemaError, Schema);
LOGGEN_DEFINE_ERROR(IoError, Io);

#undef LOGGEN_DEFINE_ERROR

} // namespace loggen
