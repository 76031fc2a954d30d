#include "qsaw/scattering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qsaw/errors.hpp"
#include "qsaw/rng.hpp"

namespace qsaw {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Gates of W applied to the half of the wide register where the ancilla
// (stored at bit `w`) is set. Reuses the plain update rules with every
// index offset into that half, so no controlled variants are needed.
void apply_controlled(std::vector<std::complex<double>>& wide, const GateList& W) {
    const int w = W.width;
    const std::size_t half = std::size_t{1} << w;
    for (const auto& g : W.gates) {
        switch (g.kind) {
            case GateKind::Hadamard: {
                const std::size_t mask = std::size_t{1} << (w - 1 - g.q1);
                for (std::size_t i = 0; i < half; ++i) {
                    if (i & mask) continue;
                    const auto a = wide[half | i];
                    const auto b = wide[half | i | mask];
                    wide[half | i] = (a + b) * kInvSqrt2;
                    wide[half | i | mask] = (a - b) * kInvSqrt2;
                }
                break;
            }
            case GateKind::PhaseShift: {
                const std::size_t mask = std::size_t{1} << (w - 1 - g.q1);
                const auto phase = std::polar(1.0, g.phase);
                for (std::size_t i = 0; i < half; ++i)
                    if (i & mask) wide[half | i] *= phase;
                break;
            }
            case GateKind::ControlledPhaseShift: {
                const std::size_t mask = (std::size_t{1} << (w - 1 - g.q1)) |
                                         (std::size_t{1} << (w - 1 - g.q2));
                const auto phase = std::polar(1.0, g.phase);
                for (std::size_t i = 0; i < half; ++i)
                    if ((i & mask) == mask) wide[half | i] *= phase;
                break;
            }
        }
    }
}

// Probability of reading the ancilla as 1 after H, controlled-W,
// an optional ancilla phase, and the closing H.
double ancilla_p1(const StateVector& psi, const GateList& W, double ancilla_phase) {
    const std::size_t dim = psi.amp.size();
    std::vector<std::complex<double>> wide(2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        wide[i] = psi.amp[i] * kInvSqrt2;
        wide[dim + i] = psi.amp[i] * kInvSqrt2;
    }
    apply_controlled(wide, W);
    if (ancilla_phase != 0.0) {
        const auto phase = std::polar(1.0, ancilla_phase);
        for (std::size_t i = 0; i < dim; ++i) wide[dim + i] *= phase;
    }
    double p1 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const auto lower = (wide[i] + wide[dim + i]) * kInvSqrt2;
        const auto upper = (wide[i] - wide[dim + i]) * kInvSqrt2;
        wide[i] = lower;
        p1 += std::norm(upper);
    }
    return p1;
}

double sample_sigma(double p1, std::int64_t n_samples, RngStream& rng) {
    std::int64_t ones = 0;
    for (std::int64_t s = 0; s < n_samples; ++s)
        if (rng.next_double() < p1) ++ones;
    return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(n_samples);
}

GateList repeat_circuit(const GateList& unit, std::int64_t times) {
    GateList out;
    out.width = unit.width;
    out.gates.reserve(unit.gates.size() * static_cast<std::size_t>(times));
    for (std::int64_t r = 0; r < times; ++r) out.append(unit);
    return out;
}

}  // namespace

ScatteringResult scattering_expectation(const StateVector& rho_state,
                                        const GateList& W,
                                        std::int64_t n_samples,
                                        std::uint64_t seed) {
    if (W.width != rho_state.params.n)
        throw WidthMismatch("circuit width " + std::to_string(W.width) +
                            " does not match register of " +
                            std::to_string(rho_state.params.n) + " qubits");
    const double p1_z = ancilla_p1(rho_state, W, 0.0);
    const double p1_y = ancilla_p1(rho_state, W, -0.5 * std::numbers::pi);

    ScatteringResult result;
    result.n_samples = n_samples;
    if (n_samples <= 0) {
        result.n_samples = 0;
        result.sigma_z = 1.0 - 2.0 * p1_z;
        result.sigma_y = 1.0 - 2.0 * p1_y;
    } else {
        RngStream rng_z(seed, 0);
        RngStream rng_y(seed, 1);
        result.sigma_z = sample_sigma(p1_z, n_samples, rng_z);
        result.sigma_y = sample_sigma(p1_y, n_samples, rng_y);
    }
    result.fidelity = result.sigma_z * result.sigma_z +
                      result.sigma_y * result.sigma_y;
    return result;
}

FitReport fidelity(const MapParams& params, double epsilon, std::int64_t t,
                   FidelityMethod method, std::int64_t n_samples,
                   std::uint64_t seed) {
    if (t < 0) throw InvalidHorizon("fidelity time must be non-negative");
    FitReport report;
    report.quantity = FitQuantity::Fidelity;
    report.window_lo = 0.0;
    report.window_hi = static_cast<double>(t);
    report.n_points = 0;
    report.std_error = 0.0;
    report.residual_rms = 0.0;

    if (method == FidelityMethod::Direct) {
        StateVector forward = init_momentum_state(params);
        MapParams perturbed = params;
        perturbed.k = params.k + epsilon;
        perturbed.K = perturbed.k * perturbed.T;
        StateVector reference = init_momentum_state(perturbed);
        for (std::int64_t s = 0; s < t; ++s) {
            floquet_step(forward);
            floquet_step(reference);
        }
        std::complex<double> overlap{0.0, 0.0};
        for (std::size_t i = 0; i < forward.amp.size(); ++i)
            overlap += std::conj(reference.amp[i]) * forward.amp[i];
        report.value = std::norm(overlap);
        return report;
    }

    MapParams perturbed = params;
    perturbed.k = params.k + epsilon;
    perturbed.K = perturbed.k * perturbed.T;
    GateList W = repeat_circuit(build_floquet_circuit(params), t);
    W.append(repeat_circuit(conjugate_reverse(build_floquet_circuit(perturbed)), t));

    const StateVector psi0 = init_momentum_state(params);
    const std::int64_t samples =
        method == FidelityMethod::ScatteringSampled ? n_samples : 0;
    if (method == FidelityMethod::ScatteringSampled && n_samples <= 0)
        throw InvalidEnsemble("sampled fidelity needs n_samples > 0");
    const ScatteringResult sc = scattering_expectation(psi0, W, samples, seed);
    report.value = sc.fidelity;
    report.n_points = sc.n_samples;
    if (sc.n_samples > 0) {
        const double n = static_cast<double>(sc.n_samples);
        const double var_z = (1.0 - sc.sigma_z * sc.sigma_z) / n;
        const double var_y = (1.0 - sc.sigma_y * sc.sigma_y) / n;
        report.std_error = std::sqrt(4.0 * sc.sigma_z * sc.sigma_z * var_z +
                                     4.0 * sc.sigma_y * sc.sigma_y * var_y);
    }
    return report;
}

std::complex<double> correlation_expectation(const StateVector& rho_state,
                                             const GateList& A,
                                             const GateList& B,
                                             const GateList& U,
                                             std::int64_t t,
                                             bool exact,
                                             std::int64_t n_samples,
                                             std::uint64_t seed) {
    if (t < 0) throw InvalidHorizon("correlation time must be non-negative");
    // (U^dag)^t A^dag U^t B as one circuit, applied right to left.
    GateList W = B;
    W.append(repeat_circuit(U, t));
    W.append(conjugate_reverse(A));
    W.append(repeat_circuit(conjugate_reverse(U), t));
    const ScatteringResult sc =
        scattering_expectation(rho_state, W, exact ? 0 : n_samples, seed);
    return {sc.sigma_z, sc.sigma_y};
}

}  // namespace qsaw
