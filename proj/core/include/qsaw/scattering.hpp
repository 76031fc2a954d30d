#pragma once

#include <complex>
#include <cstdint>

#include "qsaw/analysis.hpp"
#include "qsaw/gates.hpp"
#include "qsaw/propagator.hpp"

namespace qsaw {

struct ScatteringResult {
    double sigma_z = 0.0;
    double sigma_y = 0.0;
    double fidelity = 0.0;
    std::int64_t n_samples = 0;  // 0 = exact expectations
};

// Ancilla interferometry: ancilla |0>, Hadamard, controlled-W, Hadamard.
// P(0) - P(1) on the ancilla gives Re Tr(W rho); the y batch inserts a
// -pi/2 ancilla phase before the closing Hadamard so it gives +Im Tr(W rho).
// n_samples = 0 returns exact expectations; otherwise each of the two
// batches is estimated from n_samples simulated ancilla measurements.
// fidelity = sigma_z^2 + sigma_y^2 = |Tr(W rho)|^2 for pure rho.
ScatteringResult scattering_expectation(const StateVector& rho_state,
                                        const GateList& W,
                                        std::int64_t n_samples,
                                        std::uint64_t seed);

enum class FidelityMethod { Direct, ScatteringExact, ScatteringSampled };

// Loschmidt echo f(t) = |<psi| (U_eps^dag)^t U^t |psi>|^2 with the kick
// strength perturbed k -> k + epsilon.
FitReport fidelity(const MapParams& params, double epsilon, std::int64_t t,
                   FidelityMethod method, std::int64_t n_samples = 0,
                   std::uint64_t seed = 0);

// C(t) = <psi| (U^dag)^t A^dag U^t B |psi> for unitary A, B given as
// circuits; evaluated through the scattering circuit.
std::complex<double> correlation_expectation(const StateVector& rho_state,
                                             const GateList& A,
                                             const GateList& B,
                                             const GateList& U,
                                             std::int64_t t,
                                             bool exact = true,
                                             std::int64_t n_samples = 0,
                                             std::uint64_t seed = 0);

}  // namespace qsaw
