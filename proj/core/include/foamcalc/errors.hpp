#pragma once

#include <stdexcept>
#include <string>

namespace foamcalc {

// Every domain error carries a stable kind string; the CLI maps these to
// exit code 1 and a JSON error object.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define FOAMCALC_ERROR(Name)                                                  \
    struct Name : DomainError {                                               \
        explicit Name(const std::string& w) : DomainError(#Name, w) {}         \
    }

FOAMCALC_ERROR(NotDivisible);
FOAMCALC_ERROR(NotSymmetric);
FOAMCALC_ERROR(NonUnitRho);
FOAMCALC_ERROR(DimensionMismatch);
FOAMCALC_ERROR(NotBipartite);
FOAMCALC_ERROR(OddEuler);
FOAMCALC_ERROR(FlowViolation);
FOAMCALC_ERROR(MalformedFoam);
FOAMCALC_ERROR(InvalidWeb);
FOAMCALC_ERROR(InvalidMove);
FOAMCALC_ERROR(BoundaryMismatch);
FOAMCALC_ERROR(OrientationIncompatible);
FOAMCALC_ERROR(NonReducible);
FOAMCALC_ERROR(NonInvertibleGram);
FOAMCALC_ERROR(InvalidPD);
FOAMCALC_ERROR(RequiresRational);
FOAMCALC_ERROR(Unsupported);

#undef FOAMCALC_ERROR

}  // namespace foamcalc
