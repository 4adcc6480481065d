#pragma once

#include <stdexcept>
#include <string>

namespace oneone {

// Bad input or a tuple outside the supported domain. CLI exit code 1.
struct DomainError : std::runtime_error {
    std::string kind;
    DomainError(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

// A computed object contradicts an invariant it must satisfy. CLI exit code 3.
struct ConsistencyError : std::logic_error {
    std::string kind;
    ConsistencyError(std::string k, const std::string& msg)
        : std::logic_error(k + ": " + msg), kind(std::move(k)) {}
};

#define ONEONE_DOMAIN_ERROR(Name)                                               \
    struct Name : DomainError {                                                 \
        explicit Name(const std::string& msg) : DomainError(#Name, msg) {}      \
    };
#define ONEONE_CONSISTENCY_ERROR(Name)                                          \
    struct Name : ConsistencyError {                                            \
        explicit Name(const std::string& msg) : ConsistencyError(#Name, msg) {} \
    };

ONEONE_DOMAIN_ERROR(ConstraintViolation)
ONEONE_DOMAIN_ERROR(SOutOfRange)
ONEONE_DOMAIN_ERROR(DisconnectedBeta)
ONEONE_DOMAIN_ERROR(NotRationalHomologySphere)
ONEONE_DOMAIN_ERROR(LineNotCovered)
ONEONE_DOMAIN_ERROR(AmbientNotS3)
ONEONE_DOMAIN_ERROR(TruncationHypothesisViolated)
ONEONE_DOMAIN_ERROR(ParseError)

ONEONE_CONSISTENCY_ERROR(InconsistentGradings)
ONEONE_CONSISTENCY_ERROR(RealizationDegenerate)
ONEONE_CONSISTENCY_ERROR(DecompositionFailed)
ONEONE_CONSISTENCY_ERROR(ShapeMismatch)
ONEONE_CONSISTENCY_ERROR(ArithmeticOverflow)

#undef ONEONE_DOMAIN_ERROR
#undef ONEONE_CONSISTENCY_ERROR

}  // namespace oneone
