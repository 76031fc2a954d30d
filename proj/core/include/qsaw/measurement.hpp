#pragma once

#include <cstdint>

#include "qsaw/analysis.hpp"
#include "qsaw/propagator.hpp"
#include "qsaw/rng.hpp"

namespace qsaw {

// Projective measurement outcome on the momentum basis: level m drawn
// with probability W_m by inverse-CDF. Throws NotNormalized if
// |sum W - 1| > 1e-6.
std::int64_t sample_momentum(const StateVector& psi, RngStream& rng);

// Measuring only the n-b most significant qubits: outcome is the bin
// index storage/2^b, sampled directly from the exact bin marginals.
std::int64_t coarse_sample(const StateVector& psi, int dropped_bits, RngStream& rng);

// Evolves the initial state t steps, then simulates N_M measurement runs.
// dropped_bits >= 0 fixes the coarse graining; AUTO_DROPPED_BITS runs the
// two-stage protocol: max(100, N_M/10) full-resolution runs estimate
// sqrt(<(dm)^2>), dropped_bits = floor(log2(max(1, est/4))), and the
// stage-1 outcomes are folded into the final histogram so counts total N_M.
// Per-draw RNG streams keep the histogram independent of evaluation order.
inline constexpr int AUTO_DROPPED_BITS = -1;

MeasurementHistogram run_measurement_experiment(const MapParams& params,
                                                std::int64_t t,
                                                std::int64_t N_M,
                                                int dropped_bits,
                                                std::uint64_t seed,
                                                int threads = 1);

// Same protocol applied to an already-evolved state.
MeasurementHistogram measure_state(const StateVector& psi, std::int64_t N_M,
                                   int dropped_bits, std::uint64_t seed,
                                   int threads = 1);

// Exact bin marginals at the given coarse graining (sums of W over bins).
std::vector<double> coarse_marginals(const std::vector<double>& W, int dropped_bits);

}  // namespace qsaw
