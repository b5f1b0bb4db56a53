#pragma once

#include <stdexcept>
#include <string>

namespace ckw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RejectedParams : Error {
    using Error::Error;
};

// An observable picked up an imaginary part beyond tolerance.
struct ComplexLeak : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

struct StepRejected : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

struct CorrespondenceViolation : Error {
    using Error::Error;
};

} // namespace ckw
