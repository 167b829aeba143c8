#pragma once

#include <stdexcept>
#include <string>

namespace smf {

/// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Bad input: the request lies outside the domain of the operation.
class DomainFailure : public Error {
    using Error::Error;
};

/// The input was valid but the numerics could not deliver a result.
class NumericalFailure : public Error {
    using Error::Error;
};

#define SMF_DEFINE_ERROR(Name, Base)                                   \
    class Name : public Base {                                         \
    public:                                                            \
        explicit Name(const std::string& what) : Base(#Name, what) {} \
    }

SMF_DEFINE_ERROR(InvalidPrime, DomainFailure);
SMF_DEFINE_ERROR(NotPAdicInteger, DomainFailure);
SMF_DEFINE_ERROR(NotAUnit, DomainFailure);
SMF_DEFINE_ERROR(NotInDomain, DomainFailure);
SMF_DEFINE_ERROR(FiniteOrbit, DomainFailure);
SMF_DEFINE_ERROR(EmptySequence, DomainFailure);
SMF_DEFINE_ERROR(DomainError, DomainFailure);
SMF_DEFINE_ERROR(PoleError, DomainFailure);

SMF_DEFINE_ERROR(PrecisionExhausted, NumericalFailure);
SMF_DEFINE_ERROR(BracketFailure, NumericalFailure);
SMF_DEFINE_ERROR(NoBracket, NumericalFailure);
SMF_DEFINE_ERROR(ConvergenceFailure, NumericalFailure);
SMF_DEFINE_ERROR(DivergentTail, NumericalFailure);
SMF_DEFINE_ERROR(InsufficientTrustedDigits, NumericalFailure);

#undef SMF_DEFINE_ERROR

}  // namespace smf
