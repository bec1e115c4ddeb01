#pragma once
#include <stdexcept>
#include <string>

namespace sensorsel {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : Error {
    using Error::Error;
};

// Two pmfs passed to an operation that requires a common alphabet.
struct AlphabetMismatchError : Error {
    using Error::Error;
};

// D(p,q) would be infinite: p(x) > 0 where q(x) = 0.
struct AbsoluteContinuityError : Error {
    using Error::Error;
};

struct InvalidErrorProbabilitiesError : Error {
    using Error::Error;
};

struct LengthMismatchError : Error {
    using Error::Error;
};

// A sequential test was stepped after its verdict was already set.
struct SteppedAfterDecisionError : Error {
    using Error::Error;
};

// An observation has zero likelihood under at least one hypothesis.
struct ZeroLikelihoodError : Error {
    using Error::Error;
};

// Selection policy puts all of its mass on uninformative sensors.
struct DegeneratePolicyError : Error {
    using Error::Error;
};

// Thresholds unusable for asymptotic analysis (e.g. C_k <= 0, eta_k >= 1).
struct InvalidThresholdsError : Error {
    using Error::Error;
};

// Simulation statistics do not match the analytic configuration.
struct ConfigMismatchError : Error {
    using Error::Error;
};

// A Monte Carlo trial exceeded the sample-count guard.
struct NonTerminationError : Error {
    using Error::Error;
};

} // namespace sensorsel
