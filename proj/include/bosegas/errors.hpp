#pragma once

#include <stdexcept>
#include <string>

namespace bosegas {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// quadrature
struct NonConvergent : Error {
    using Error::Error;
};
struct InvalidInterval : Error {
    using Error::Error;
};

// radial ODE integration
struct StepTooCoarse : Error {
    using Error::Error;
};

// quadratic form minimization
struct SingularSystem : Error {
    using Error::Error;
};

// dense symmetric eigensolver
struct NotSymmetric : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};

// scattering
struct MeshTooCoarse : Error {
    using Error::Error;
};
struct HardCoreUnsupported : Error {
    using Error::Error;
};

// localization
struct QuadratureBudgetExceeded : Error {
    using Error::Error;
};
struct NotFound : Error {
    using Error::Error;
};
struct RangeTooLarge : Error {
    using Error::Error;
};

// quasi-free bounds
struct InvalidCoefficients : Error {
    using Error::Error;
};
struct TruncationNotConverged : Error {
    using Error::Error;
};

// energy assembly
struct RegimeViolation : Error {
    using Error::Error;
};

// command line / file handling
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace bosegas
