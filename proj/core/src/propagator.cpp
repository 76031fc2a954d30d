#include "qsaw/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "qsaw/errors.hpp"

namespace qsaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plan creation is the only non-thread-safe part of FFTW; execution via
// the new-array interface is safe. Plans are cached per (N, sign).
class FftCache {
  public:
    static fftw_plan get(std::int64_t N, int sign) {
        static FftCache cache;
        std::scoped_lock lock(cache.mutex_);
        auto key = std::make_pair(N, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(N));
        auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(N), raw, raw, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(key, plan);
        return plan;
    }

  private:
    FftCache() = default;
    std::mutex mutex_;
    std::map<std::pair<std::int64_t, int>, fftw_plan> plans_;
};

void run_fft(std::vector<std::complex<double>>& amp, int sign) {
    fftw_plan plan = FftCache::get(static_cast<std::int64_t>(amp.size()), sign);
    auto* raw = reinterpret_cast<fftw_complex*>(amp.data());
    fftw_execute_dft(plan, raw, raw);
    const double scale = 1.0 / std::sqrt(static_cast<double>(amp.size()));
    for (auto& a : amp) a *= scale;
}

// (-1)^j twist realizing the m = j - N/2 centering around a plain FFT.
void apply_twist(std::vector<std::complex<double>>& amp) {
    for (std::size_t j = 1; j < amp.size(); j += 2) amp[j] = -amp[j];
}

void require_basis(const StateVector& psi, Basis want, const char* op) {
    if (psi.basis != want)
        throw WrongBasis(std::string(op) + ": state is in the " +
                         (psi.basis == Basis::Momentum ? "momentum" : "angle") +
                         " basis");
}

}  // namespace

StateVector init_momentum_state(const MapParams& params) {
    StateVector psi;
    psi.params = params;
    psi.basis = Basis::Momentum;
    psi.amp.assign(static_cast<std::size_t>(params.N), {0.0, 0.0});
    psi.amp[static_cast<std::size_t>(params.m0 + params.N / 2)] = {1.0, 0.0};
    return psi;
}

void apply_kick(StateVector& psi) {
    require_basis(psi, Basis::Angle, "apply_kick");
    const double k = psi.params.k;
    const auto N = static_cast<double>(psi.params.N);
    for (std::size_t j = 0; j < psi.amp.size(); ++j) {
        const double dtheta = kTwoPi * static_cast<double>(j) / N - std::numbers::pi;
        psi.amp[j] *= std::polar(1.0, 0.5 * k * dtheta * dtheta);
    }
}

void apply_free(StateVector& psi) {
    require_basis(psi, Basis::Momentum, "apply_free");
    const double T = psi.params.T;
    const std::int64_t half = psi.params.N / 2;
    for (std::size_t j = 0; j < psi.amp.size(); ++j) {
        const double m = static_cast<double>(static_cast<std::int64_t>(j) - half);
        psi.amp[j] *= std::polar(1.0, -0.5 * T * m * m);
    }
}

void to_angle_basis(StateVector& psi) {
    require_basis(psi, Basis::Momentum, "to_angle_basis");
    run_fft(psi.amp, FFTW_BACKWARD);
    apply_twist(psi.amp);
    psi.basis = Basis::Angle;
}

void to_momentum_basis(StateVector& psi) {
    require_basis(psi, Basis::Angle, "to_momentum_basis");
    apply_twist(psi.amp);
    run_fft(psi.amp, FFTW_FORWARD);
    psi.basis = Basis::Momentum;
}

void floquet_step(StateVector& psi) {
    to_angle_basis(psi);
    apply_kick(psi);
    to_momentum_basis(psi);
    apply_free(psi);
}

void floquet_step_inverse(StateVector& psi) {
    require_basis(psi, Basis::Momentum, "floquet_step_inverse");
    // conjugate diagonals, transforms in reverse order
    const double T = psi.params.T;
    const std::int64_t half = psi.params.N / 2;
    for (std::size_t j = 0; j < psi.amp.size(); ++j) {
        const double m = static_cast<double>(static_cast<std::int64_t>(j) - half);
        psi.amp[j] *= std::polar(1.0, 0.5 * T * m * m);
    }
    to_angle_basis(psi);
    const double k = psi.params.k;
    const auto N = static_cast<double>(psi.params.N);
    for (std::size_t j = 0; j < psi.amp.size(); ++j) {
        const double dtheta = kTwoPi * static_cast<double>(j) / N - std::numbers::pi;
        psi.amp[j] *= std::polar(1.0, -0.5 * k * dtheta * dtheta);
    }
    to_momentum_basis(psi);
}

std::vector<double> probabilities(const StateVector& psi) {
    require_basis(psi, Basis::Momentum, "probabilities");
    std::vector<double> W(psi.amp.size());
    for (std::size_t j = 0; j < psi.amp.size(); ++j) W[j] = std::norm(psi.amp[j]);
    return W;
}

double norm_squared(const StateVector& psi) {
    double s = 0.0;
    for (const auto& a : psi.amp) s += std::norm(a);
    return s;
}

MomentumMoments momentum_moments(const StateVector& psi) {
    const auto W = probabilities(psi);
    const std::int64_t half = psi.params.N / 2;
    double mean = 0.0, second = 0.0;
    for (std::size_t j = 0; j < W.size(); ++j) {
        const double m = static_cast<double>(static_cast<std::int64_t>(j) - half);
        mean += W[j] * m;
        second += W[j] * m * m;
    }
    return {mean, second - mean * mean};
}

std::vector<std::complex<double>> floquet_dense(const MapParams& params) {
    const auto N = static_cast<std::size_t>(params.N);
    std::vector<std::complex<double>> U(N * N);
    for (std::size_t col = 0; col < N; ++col) {
        StateVector psi;
        psi.params = params;
        psi.basis = Basis::Momentum;
        psi.amp.assign(N, {0.0, 0.0});
        psi.amp[col] = {1.0, 0.0};
        floquet_step(psi);
        for (std::size_t row = 0; row < N; ++row) U[row * N + col] = psi.amp[row];
    }
    return U;
}

}  // namespace qsaw
