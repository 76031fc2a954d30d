#pragma once

#include <stdexcept>
#include <string>

namespace qsaw {

// Invalid user input: parameters, config files, CLI flags. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime numerical or pipeline problems. CLI exit code 3.
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

struct OverconstrainedParams : ConfigError {
    explicit OverconstrainedParams(const std::string& w) : ConfigError(w) {}
};
struct UnderconstrainedParams : ConfigError {
    explicit UnderconstrainedParams(const std::string& w) : ConfigError(w) {}
};
struct InvalidTorus : ConfigError {
    explicit InvalidTorus(const std::string& w) : ConfigError(w) {}
};
struct InvalidMomentum : ConfigError {
    explicit InvalidMomentum(const std::string& w) : ConfigError(w) {}
};
struct InvalidHorizon : ConfigError {
    explicit InvalidHorizon(const std::string& w) : ConfigError(w) {}
};
struct InvalidEnsemble : ConfigError {
    explicit InvalidEnsemble(const std::string& w) : ConfigError(w) {}
};
struct NonPositiveK : ConfigError {
    explicit NonPositiveK(const std::string& w) : ConfigError(w) {}
};

struct WrongBasis : NumericalFailure {
    explicit WrongBasis(const std::string& w) : NumericalFailure(w) {}
};
struct WidthMismatch : NumericalFailure {
    explicit WidthMismatch(const std::string& w) : NumericalFailure(w) {}
};
struct NotNormalized : NumericalFailure {
    explicit NotNormalized(const std::string& w) : NumericalFailure(w) {}
};
struct InsufficientSupport : NumericalFailure {
    explicit InsufficientSupport(const std::string& w) : NumericalFailure(w) {}
};
struct NonDecaying : NumericalFailure {
    explicit NonDecaying(const std::string& w) : NumericalFailure(w) {}
};
struct InsufficientData : NumericalFailure {
    explicit InsufficientData(const std::string& w) : NumericalFailure(w) {}
};
struct NonPositiveVariance : NumericalFailure {
    explicit NonPositiveVariance(const std::string& w) : NumericalFailure(w) {}
};

}  // namespace qsaw
