#include "qsaw/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "qsaw/errors.hpp"

namespace qsaw {

namespace {

std::vector<double> build_cdf(const std::vector<double>& W) {
    std::vector<double> cdf(W.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) {
        sum += W[i];
        cdf[i] = sum;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw NotNormalized("probabilities sum to " + std::to_string(sum));
    return cdf;
}

std::int64_t draw_index(const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) return static_cast<std::int64_t>(cdf.size()) - 1;
    return static_cast<std::int64_t>(it - cdf.begin());
}

void require_momentum(const StateVector& psi) {
    if (psi.basis != Basis::Momentum)
        throw WrongBasis("measurement expects a momentum-basis state");
}

void check_dropped_bits(int dropped_bits, int n) {
    if (dropped_bits < 0 || dropped_bits > n)
        throw ConfigError("dropped_bits must lie in [0, " + std::to_string(n) +
                          "], got " + std::to_string(dropped_bits));
}

// Draw indices lo..hi-1 against a fixed CDF, each addressed by its draw
// number so the tally is identical under any thread split.
std::map<std::int64_t, std::int64_t> tally_range(const std::vector<double>& cdf,
                                                 std::uint64_t seed,
                                                 std::int64_t lo, std::int64_t hi,
                                                 int threads) {
    const auto tally_block = [&cdf, seed](std::int64_t a, std::int64_t b) {
        std::map<std::int64_t, std::int64_t> local;
        for (std::int64_t i = a; i < b; ++i) {
            const double u = RngStream::uniform_at(seed, static_cast<std::uint64_t>(i), 0);
            ++local[draw_index(cdf, u)];
        }
        return local;
    };
    if (threads <= 1 || hi - lo < 2 * threads) return tally_block(lo, hi);

    std::vector<std::map<std::int64_t, std::int64_t>> parts(threads);
    std::vector<std::thread> pool;
    const std::int64_t span = hi - lo;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t a = lo + span * w / threads;
        const std::int64_t b = lo + span * (w + 1) / threads;
        pool.emplace_back([&, w, a, b] { parts[w] = tally_block(a, b); });
    }
    for (auto& th : pool) th.join();
    std::map<std::int64_t, std::int64_t> merged;
    for (const auto& part : parts)
        for (const auto& [bin, count] : part) merged[bin] += count;
    return merged;
}

}  // namespace

std::vector<double> coarse_marginals(const std::vector<double>& W, int dropped_bits) {
    if (dropped_bits < 0 || (std::size_t{1} << dropped_bits) > W.size() ||
        W.size() % (std::size_t{1} << dropped_bits) != 0)
        throw ConfigError("dropped_bits " + std::to_string(dropped_bits) +
                          " invalid for " + std::to_string(W.size()) + " levels");
    const std::size_t width = std::size_t{1} << dropped_bits;
    std::vector<double> bins(W.size() / width, 0.0);
    for (std::size_t i = 0; i < W.size(); ++i) bins[i >> dropped_bits] += W[i];
    return bins;
}

std::int64_t sample_momentum(const StateVector& psi, RngStream& rng) {
    require_momentum(psi);
    const auto cdf = build_cdf(probabilities(psi));
    const std::int64_t half = psi.params.N / 2;
    return draw_index(cdf, rng.next_double()) - half;
}

std::int64_t coarse_sample(const StateVector& psi, int dropped_bits, RngStream& rng) {
    require_momentum(psi);
    check_dropped_bits(dropped_bits, psi.params.n);
    const auto cdf = build_cdf(coarse_marginals(probabilities(psi), dropped_bits));
    return draw_index(cdf, rng.next_double());
}

MeasurementHistogram measure_state(const StateVector& psi, std::int64_t N_M,
                                   int dropped_bits, std::uint64_t seed,
                                   int threads) {
    require_momentum(psi);
    if (N_M < 1) throw InvalidEnsemble("measurement runs must be >= 1");
    const std::vector<double> W = probabilities(psi);

    MeasurementHistogram hist;
    hist.n_runs = N_M;
    hist.n = psi.params.n;

    if (dropped_bits != AUTO_DROPPED_BITS) {
        check_dropped_bits(dropped_bits, psi.params.n);
        hist.bin_width = std::int64_t{1} << dropped_bits;
        const auto cdf = build_cdf(coarse_marginals(W, dropped_bits));
        hist.counts = tally_range(cdf, seed, 0, N_M, threads);
        return hist;
    }

    // Stage 1: full-resolution pilot runs size the spread, fixing the
    // coarse graining near a quarter of the rms width.
    const std::int64_t pilot = std::min<std::int64_t>(N_M, std::max<std::int64_t>(100, N_M / 10));
    const auto full_cdf = build_cdf(W);
    const std::int64_t half = psi.params.N / 2;
    std::vector<std::int64_t> pilot_storage(static_cast<std::size_t>(pilot));
    double mean = 0.0;
    for (std::int64_t i = 0; i < pilot; ++i) {
        const double u = RngStream::uniform_at(seed, static_cast<std::uint64_t>(i), 0);
        pilot_storage[static_cast<std::size_t>(i)] = draw_index(full_cdf, u);
        mean += static_cast<double>(pilot_storage[static_cast<std::size_t>(i)] - half);
    }
    mean /= static_cast<double>(pilot);
    double var = 0.0;
    for (const auto s : pilot_storage) {
        const double dm = static_cast<double>(s - half) - mean;
        var += dm * dm;
    }
    var /= static_cast<double>(pilot);
    const double spread = std::sqrt(var);
    int b = static_cast<int>(std::floor(std::log2(std::max(1.0, spread / 4.0))));
    b = std::clamp(b, 0, psi.params.n);
    hist.bin_width = std::int64_t{1} << b;

    // Stage 2 at the chosen graining; the pilot outcomes fold into the
    // same bins so every run contributes exactly once.
    const auto coarse_cdf = build_cdf(coarse_marginals(W, b));
    hist.counts = tally_range(coarse_cdf, seed, pilot, N_M, threads);
    for (const auto s : pilot_storage) ++hist.counts[s >> b];
    return hist;
}

MeasurementHistogram run_measurement_experiment(const MapParams& params,
                                                std::int64_t t,
                                                std::int64_t N_M,
                                                int dropped_bits,
                                                std::uint64_t seed,
                                                int threads) {
    if (t < 0) throw InvalidHorizon("evolution time must be non-negative");
    StateVector psi = init_momentum_state(params);
    for (std::int64_t s = 0; s < t; ++s) floquet_step(psi);
    return measure_state(psi, N_M, dropped_bits, seed, threads);
}

}  // namespace qsaw
