#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qsaw {

enum class BoundaryMode { Torus, Cylinder };

// Shared parameter set linking the classical and quantum maps.
// K = kT couples the classical chaos parameter K to the quantum kick
// strength k through the kick period T (the effective Planck constant).
// On the torus T = 2*pi*L/N; in cylinder mode T is free and L is unused.
struct MapParams {
    double K = 0.0;
    double k = 0.0;
    double T = 0.0;
    int n = 1;           // qubit count
    std::int64_t N = 2;  // Hilbert-space dimension, 2^n
    int L = 1;           // torus size in units of 2*pi
    std::int64_t m0 = 0; // initial momentum level, in [-N/2, N/2)
    BoundaryMode boundary = BoundaryMode::Torus;
};

// Partial parameter set accepted from CLI/config. Exactly two of {K, k, T}
// must be derivable; on the torus the relation T = 2*pi*L/N supplies T.
struct ParamSpec {
    std::optional<double> K;
    std::optional<double> k;
    std::optional<double> T;
    int n = 1;
    int L = 1;
    std::int64_t m0 = 0;
    BoundaryMode boundary = BoundaryMode::Torus;
};

// Completes and validates a ParamSpec. Throws OverconstrainedParams,
// UnderconstrainedParams, InvalidTorus, InvalidMomentum, ConfigError.
MapParams derive_params(const ParamSpec& spec);

// Parses a numeric CLI/config value, accepting the exact-irrational
// shorthands "sqrt2", "sqrt3", ... ("sqrt" followed by a non-negative
// integer) alongside ordinary decimal literals.
double parse_param_value(const std::string& text);

std::string to_string(BoundaryMode mode);
BoundaryMode boundary_from_string(const std::string& text);

}  // namespace qsaw
