#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsaw/params.hpp"

namespace qsaw {

// Point of the classical map in the rescaled variables (J, theta),
// theta kept in [0, 2*pi).
struct PhasePoint {
    double J = 0.0;
    double theta = 0.0;
};

struct TangentVector {
    double dJ = 0.0;
    double dtheta = 0.0;
};

struct EnsembleMoments {
    std::int64_t t = 0;
    double mean_J = 0.0;
    double var_J = 0.0;
    std::int64_t sample_count = 0;
};

// One iteration of the sawtooth map: J' = J + K(theta - pi),
// theta' = theta + J'. theta is reduced mod 2*pi with a floor-based
// modulo (the force is discontinuous at theta = 0, so the reduction
// convention matters and is fixed here). In torus mode J is reduced
// mod 2*pi*L into [-pi*L, pi*L).
PhasePoint step_map(PhasePoint p, double K, BoundaryMode boundary, int L = 1);

// Tangent map: constant matrix [[1, K], [1, 1+K]] (the sawtooth force is
// piecewise linear, so the tangent map is point-independent).
TangentVector tangent_step(TangentVector v, double K);

// Stability eigenvalues mu = (2 + K +/- sqrt(K^2 + 4K)) / 2.
std::pair<std::complex<double>, std::complex<double>> stability_eigenvalues(double K);

// Maximum Lyapunov exponent from tangent-vector growth with periodic
// renormalization. Converges to ln mu_+ (K > 0) or ln |mu_-| (K < -4);
// ~0 in the stable window -4 <= K <= 0.
double lyapunov_exponent(double K, std::int64_t t_max,
                         TangentVector v0 = {1.0, 0.0});

// Evolves n_traj trajectories started at J = T*m0 with uniformly random
// phases and records J moments at the requested times. Per-trajectory
// RNG streams and fixed-order block reduction make the result independent
// of the thread count.
std::vector<EnsembleMoments> ensemble_evolve(const MapParams& params,
                                             std::int64_t n_traj,
                                             std::int64_t t_max,
                                             std::uint64_t seed,
                                             const std::vector<std::int64_t>& record_times,
                                             int threads = 1);

// Final-time J values of the same ensemble (for profile tests).
std::vector<double> ensemble_final_J(const MapParams& params,
                                     std::int64_t n_traj, std::int64_t t_max,
                                     std::uint64_t seed, int threads = 1);

}  // namespace qsaw
