#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsaw/params.hpp"

namespace qsaw {

enum class Basis : std::uint32_t { Momentum = 0, Angle = 1 };

// N-level wave function. Momentum storage index j holds level m = j - N/2;
// angle storage index j holds grid point theta_j = 2*pi*j/N.
struct StateVector {
    MapParams params;
    Basis basis = Basis::Momentum;
    std::vector<std::complex<double>> amp;

    std::int64_t size() const { return static_cast<std::int64_t>(amp.size()); }
};

// Delta-peaked momentum state at level params.m0.
StateVector init_momentum_state(const MapParams& params);

// Diagonal kick exp(i k (theta_j - pi)^2 / 2) on the angle grid.
void apply_kick(StateVector& psi);
// Diagonal free rotation exp(-i T m^2 / 2) over momentum levels.
void apply_free(StateVector& psi);

// Unitary centered transforms between the two bases:
//   psi_angle(a) = (1/sqrt(N)) sum_m psihat(m) e^{i m theta_a}.
// The m = j - N/2 centering appears as a (-1)^a phase twist around a
// standard FFT. Round trip restores the state to ~1e-15.
void to_angle_basis(StateVector& psi);
void to_momentum_basis(StateVector& psi);

// One Floquet iteration on a momentum-basis state:
// to_angle, kick, to_momentum, free.
void floquet_step(StateVector& psi);
// Exact inverse iteration.
void floquet_step_inverse(StateVector& psi);

// W_m = |<m|psi>|^2 in storage order (momentum basis only).
std::vector<double> probabilities(const StateVector& psi);

double norm_squared(const StateVector& psi);

// Mean and variance of the momentum level under W_m.
struct MomentumMoments {
    double mean_m = 0.0;
    double var_m = 0.0;
};
MomentumMoments momentum_moments(const StateVector& psi);

// Dense matrix of one Floquet step, built column by column (n small).
std::vector<std::complex<double>> floquet_dense(const MapParams& params);

}  // namespace qsaw
