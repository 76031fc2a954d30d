#include "qsaw/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "qsaw/errors.hpp"
#include "qsaw/rng.hpp"

namespace qsaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Floor-based reduction into [0, span); stable for negative x.
inline double wrap(double x, double span) {
    double r = x - span * std::floor(x / span);
    if (r >= span) r -= span;  // guard the x/span rounding edge
    return r;
}

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

}  // namespace

PhasePoint step_map(PhasePoint p, double K, BoundaryMode boundary, int L) {
    double J = p.J + K * (p.theta - std::numbers::pi);
    if (boundary == BoundaryMode::Torus) {
        const double span = kTwoPi * L;
        J = wrap(J + span / 2.0, span) - span / 2.0;  // into [-pi L, pi L)
    }
    double theta = wrap(p.theta + J, kTwoPi);
    return {J, theta};
}

TangentVector tangent_step(TangentVector v, double K) {
    return {v.dJ + K * v.dtheta, v.dJ + (1.0 + K) * v.dtheta};
}

std::pair<std::complex<double>, std::complex<double>> stability_eigenvalues(double K) {
    std::complex<double> disc = std::sqrt(std::complex<double>(K * K + 4.0 * K, 0.0));
    std::complex<double> mu_plus = (2.0 + K + disc) / 2.0;
    std::complex<double> mu_minus = (2.0 + K - disc) / 2.0;
    return {mu_plus, mu_minus};
}

double lyapunov_exponent(double K, std::int64_t t_max, TangentVector v0) {
    if (t_max < 1)
        throw InvalidHorizon("t_max must be >= 1, got " + std::to_string(t_max));
    double log_growth = 0.0;
    TangentVector v = v0;
    for (std::int64_t t = 1; t <= t_max; ++t) {
        v = tangent_step(v, K);
        if (t % 10 == 0 || t == t_max) {
            double norm = std::hypot(v.dJ, v.dtheta);
            log_growth += std::log(norm);
            v.dJ /= norm;
            v.dtheta /= norm;
        }
    }
    double norm0 = std::hypot(v0.dJ, v0.dtheta);
    return (log_growth - std::log(norm0)) / static_cast<double>(t_max);
}

namespace {

// Evolves trajectories [lo, hi) and accumulates J sums at each record time.
// One RNG stream per trajectory index, so the partition is irrelevant.
void run_block(const MapParams& params, std::int64_t lo, std::int64_t hi,
               std::uint64_t seed, const std::vector<std::int64_t>& record_times,
               std::vector<BlockMoments>& acc, std::vector<double>* final_J) {
    const double J0 = params.T * static_cast<double>(params.m0);
    const std::int64_t t_end = record_times.empty() ? 0 : record_times.back();
    for (std::int64_t i = lo; i < hi; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        PhasePoint p{J0, rng.next_angle()};
        std::size_t next_rec = 0;
        for (std::int64_t t = 0; t <= t_end; ++t) {
            if (t > 0) p = step_map(p, params.K, params.boundary, params.L);
            while (next_rec < record_times.size() && record_times[next_rec] == t) {
                acc[next_rec].sum += p.J;
                acc[next_rec].sum_sq += p.J * p.J;
                ++next_rec;
            }
        }
        if (final_J) (*final_J)[static_cast<std::size_t>(i)] = p.J;
    }
}

std::vector<EnsembleMoments> evolve_impl(const MapParams& params,
                                         std::int64_t n_traj, std::int64_t t_max,
                                         std::uint64_t seed,
                                         const std::vector<std::int64_t>& record_times,
                                         int threads, std::vector<double>* final_J) {
    if (n_traj < 2)
        throw InvalidEnsemble("n_traj must be >= 2, got " + std::to_string(n_traj));
    for (std::size_t i = 0; i < record_times.size(); ++i) {
        if (record_times[i] < 0 || record_times[i] > t_max)
            throw ConfigError("record time outside [0, t_max]");
        if (i > 0 && record_times[i] <= record_times[i - 1])
            throw ConfigError("record times must be strictly increasing");
    }

    // Fixed-size blocks merged in index order: the reduction is identical
    // for any thread count.
    constexpr std::int64_t kBlock = 4096;
    const std::int64_t n_blocks = (n_traj + kBlock - 1) / kBlock;
    std::vector<std::vector<BlockMoments>> partials(
        static_cast<std::size_t>(n_blocks),
        std::vector<BlockMoments>(record_times.size()));

    threads = std::max(1, threads);
    if (threads == 1 || n_blocks == 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b)
            run_block(params, b * kBlock, std::min(n_traj, (b + 1) * kBlock), seed,
                      record_times, partials[static_cast<std::size_t>(b)], final_J);
    } else {
        std::vector<std::thread> pool;
        std::int64_t per = (n_blocks + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            std::int64_t b_lo = w * per, b_hi = std::min(n_blocks, (w + 1) * per);
            if (b_lo >= b_hi) break;
            pool.emplace_back([&, b_lo, b_hi] {
                for (std::int64_t b = b_lo; b < b_hi; ++b)
                    run_block(params, b * kBlock, std::min(n_traj, (b + 1) * kBlock),
                              seed, record_times, partials[static_cast<std::size_t>(b)],
                              final_J);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<EnsembleMoments> out(record_times.size());
    for (std::size_t r = 0; r < record_times.size(); ++r) {
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& blk : partials) {
            sum += blk[r].sum;
            sum_sq += blk[r].sum_sq;
        }
        const double mean = sum / static_cast<double>(n_traj);
        double var = sum_sq / static_cast<double>(n_traj) - mean * mean;
        out[r] = {record_times[r], mean, std::max(0.0, var), n_traj};
    }
    return out;
}

}  // namespace

std::vector<EnsembleMoments> ensemble_evolve(const MapParams& params,
                                             std::int64_t n_traj, std::int64_t t_max,
                                             std::uint64_t seed,
                                             const std::vector<std::int64_t>& record_times,
                                             int threads) {
    return evolve_impl(params, n_traj, t_max, seed, record_times, threads, nullptr);
}

std::vector<double> ensemble_final_J(const MapParams& params, std::int64_t n_traj,
                                     std::int64_t t_max, std::uint64_t seed,
                                     int threads) {
    std::vector<double> final_J(static_cast<std::size_t>(n_traj));
    std::vector<std::int64_t> record{t_max};
    evolve_impl(params, n_traj, t_max, seed, record, threads, &final_J);
    return final_J;
}

}  // namespace qsaw
