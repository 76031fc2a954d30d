// Acceptance gate: each invocation checks one numbered criterion and
// prints a single PASS/FAIL verdict line with the measured numbers.
// Exit code 0 = pass, 1 = fail, 2 = usage error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qsaw/analysis.hpp"
#include "qsaw/classical.hpp"
#include "qsaw/errors.hpp"
#include "qsaw/gates.hpp"
#include "qsaw/measurement.hpp"
#include "qsaw/params.hpp"
#include "qsaw/propagator.hpp"
#include "qsaw/rng.hpp"
#include "qsaw/scattering.hpp"

using namespace qsaw;
using cplx = std::complex<double>;

namespace {

MapParams torus_params(double K, int n, int L) {
    ParamSpec spec;
    spec.K = K;
    spec.n = n;
    spec.L = L;
    return derive_params(spec);
}

// Localized-regime reference parameters: n = 6, K = sqrt2, k = sqrt3,
// cylinder boundary, m0 = 0.
MapParams localized_reference_params() {
    ParamSpec spec;
    spec.K = std::numbers::sqrt2;
    spec.k = std::numbers::sqrt3;
    spec.boundary = BoundaryMode::Cylinder;
    spec.n = 6;
    return derive_params(spec);
}

double phase_aligned_error(const std::vector<cplx>& A,
                           const std::vector<cplx>& B) {
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) overlap += std::conj(B[i]) * A[i];
    const cplx phase = overlap / std::abs(overlap);
    double worst = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i)
        worst = std::max(worst, std::abs(A[i] - phase * B[i]));
    return worst;
}

std::vector<cplx> random_state(std::int64_t N, std::uint64_t seed) {
    std::vector<cplx> amp(static_cast<std::size_t>(N));
    RngStream rng(seed, 0);
    double norm = 0.0;
    for (auto& a : amp) {
        a = {rng.next_normal(), rng.next_normal()};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amp) a /= norm;
    return amp;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return std::nan("");
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::int64_t> log_spaced_times(std::int64_t t_max, int per_decade) {
    std::vector<std::int64_t> times;
    const double decades = std::log10(static_cast<double>(t_max));
    const int steps = static_cast<int>(std::ceil(decades * per_decade));
    for (int j = 0; j <= steps; ++j) {
        const auto t = static_cast<std::int64_t>(
            std::llround(std::pow(10.0, decades * j / steps)));
        if (times.empty() || t > times.back()) times.push_back(std::min(t, t_max));
    }
    if (times.back() != t_max) times.push_back(t_max);
    return times;
}

// ---- criterion 1: gate circuit equals the spectral operator -------------

bool criterion_gate_equivalence() {
    double worst_dense = 0.0;
    for (int n : {2, 3, 4}) {
        MapParams p = torus_params(std::numbers::sqrt2, n, 1);
        const auto gate_U = dense_matrix(build_floquet_circuit(p));
        const auto spectral_U = floquet_dense(p);
        worst_dense = std::max(worst_dense, phase_aligned_error(gate_U, spectral_U));
    }

    double worst_deficit = 0.0;
    for (int n : {6, 8, 10}) {
        MapParams p = torus_params(std::numbers::sqrt2, n, 1);
        const GateList circuit = build_floquet_circuit(p);

        StateVector spectral;
        spectral.params = p;
        spectral.basis = Basis::Momentum;
        spectral.amp = random_state(p.N, 42 + static_cast<std::uint64_t>(n));
        std::vector<cplx> gated = spectral.amp;

        for (int t = 0; t < 100; ++t) {
            floquet_step(spectral);
            apply_gates(gated, circuit);
        }
        cplx overlap = 0.0;
        for (std::size_t i = 0; i < gated.size(); ++i)
            overlap += std::conj(gated[i]) * spectral.amp[i];
        worst_deficit = std::max(worst_deficit, 1.0 - std::norm(overlap));
    }

    const bool pass = worst_dense < 1e-10 && worst_deficit < 1e-9;
    std::printf("  dense max error (n=2,3,4): %.3e (budget 1e-10)\n", worst_dense);
    std::printf("  overlap deficit after 100 steps (n=6,8,10): %.3e (budget 1e-9)\n",
                worst_deficit);
    return pass;
}

// ---- criterion 2: gate count ---------------------------------------------

bool criterion_gate_count() {
    bool pass = true;
    std::printf("  n: count / 3n^2+n\n");
    for (int n = 1; n <= 12; ++n) {
        MapParams p = torus_params(std::numbers::sqrt2, n, 1);
        const auto count = build_floquet_circuit(p).gate_count();
        const std::int64_t expected = 3 * n * n + n;
        if (count != expected) pass = false;
        std::printf("  %2d: %4lld / %4lld%s\n", n, static_cast<long long>(count),
                    static_cast<long long>(expected),
                    count == expected ? "" : "  MISMATCH");
    }
    return pass;
}

// ---- criterion 3: Lyapunov exponents --------------------------------------

bool criterion_lyapunov() {
    const double reference = 1.3169578969248166;  // ln(2 + sqrt3)
    const double chaotic = lyapunov_exponent(2.0, 10000);
    const double stable = lyapunov_exponent(-1.0, 10000);
    const double rel = std::abs(chaotic - reference) / reference;
    const bool pass = rel < 0.005 && std::abs(stable) < 0.01;
    std::printf("  lambda(K=2) = %.10f vs ln(2+sqrt3) = %.10f, rel err %.4f%% "
                "(budget 0.5%%)\n",
                chaotic, reference, 100.0 * rel);
    std::printf("  lambda(K=-1) = %+.6f (budget |.| < 0.01)\n", stable);
    return pass;
}

// ---- criterion 4: chaotic diffusion coefficient ---------------------------

bool criterion_diffusion() {
    MapParams p;
    p.K = std::numbers::sqrt2;
    p.T = 1.0;
    p.k = p.K;
    p.boundary = BoundaryMode::Cylinder;

    std::vector<std::int64_t> times;
    for (std::int64_t t = 0; t <= 100; t += 5) times.push_back(t);
    const auto moments = ensemble_evolve(p, 10000, 100, 1, times);
    const FitReport fit = fit_diffusion_coefficient(moments);
    const double theory = rpa_diffusion(p.K).D;
    const double rel = std::abs(fit.value - theory) / theory;
    const bool pass = rel < 0.25;
    std::printf("  D(K=sqrt2) = %.4f vs pi^2 K^2/3 = %.4f, rel err %.1f%% "
                "(budget 25%%)\n",
                fit.value, theory, 100.0 * rel);
    return pass;
}

// ---- criterion 5: anomalous exponent at K = -0.1 ---------------------------

bool criterion_anomalous() {
    MapParams p;
    p.K = -0.1;
    p.T = 1.0;
    p.k = p.K;
    p.boundary = BoundaryMode::Cylinder;

    const auto times = log_spaced_times(10000, 12);
    const auto moments = ensemble_evolve(p, 10000, 10000, 1, times);

    double alpha = std::nan("");
    double stderr_alpha = std::nan("");
    std::string failure;
    try {
        const FitReport fit = fit_anomalous_exponent(moments, 100.0, 10000.0);
        alpha = fit.value;
        stderr_alpha = fit.std_error;
    } catch (const NumericalFailure& err) {
        failure = err.what();
    }

    const bool pass = !std::isnan(alpha) && std::abs(alpha - 0.57) <= 0.10;
    if (failure.empty())
        std::printf("  alpha(K=-0.1) over t in [1e2,1e4] = %.3f +/- %.3f "
                    "(required 0.57 +/- 0.10)\n",
                    alpha, stderr_alpha);
    else
        std::printf("  exponent fit failed: %s\n", failure.c_str());
    if (!pass) {
        std::printf("  note: at K=-0.1 the J0=0 ensemble launches inside the "
                    "stable island around the origin; var(J) librates\n");
        std::printf("  coherently (period ~20 kicks) through this whole "
                    "window, so the fit sees the island, not transport.\n");
        std::printf("  Longer horizons do not rescue it at this ensemble "
                    "size: past t ~ 1e5 the variance is carried by rare\n");
        std::printf("  escapes and the fitted exponent swings roughly 0.3 "
                    "to 0.9 between seeds (see the fig4 recipe).\n");
    }
    return pass;
}

// ---- criterion 6: dynamical localization profile ---------------------------

bool criterion_localization() {
    MapParams p = localized_reference_params();
    StateVector psi = init_momentum_state(p);

    std::vector<std::vector<double>> early, late;
    for (std::int64_t t = 1; t <= 300; ++t) {
        floquet_step(psi);
        if (t >= 10 && t <= 20) early.push_back(probabilities(psi));
        if (t >= 290) late.push_back(probabilities(psi));
    }
    const FitReport fit_early =
        fit_localization_length(average_distributions(early), 0, p.N);
    const FitReport fit_late =
        fit_localization_length(average_distributions(late), 0, p.N);
    const double drift =
        std::abs(fit_late.value - fit_early.value) / fit_early.value;

    const bool pass = fit_early.value >= 9.0 && fit_early.value <= 15.0 &&
                      drift <= 0.25;
    std::printf("  ell from t in [10,20]: %.3f (required in [9,15])\n",
                fit_early.value);
    std::printf("  ell from t in [290,300]: %.3f, drift %.1f%% (budget 25%%)\n",
                fit_late.value, 100.0 * drift);
    return pass;
}

// ---- criterion 7: coarse-grained measurement protocol ----------------------

bool criterion_measurement() {
    MapParams p = torus_params(std::numbers::sqrt2, 6, 10);
    StateVector psi = init_momentum_state(p);
    for (int t = 0; t < 50; ++t) floquet_step(psi);
    const double theory = theoretical_localization(p);

    std::vector<double> ell_coarse, two_xi, ell_full;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto coarse = measure_state(psi, 5000, 2, seed);
        try {
            ell_coarse.push_back(fit_localization_length(coarse, 0).value);
        } catch (const NumericalFailure&) {
            ell_coarse.push_back(std::numeric_limits<double>::infinity());
        }
        two_xi.push_back(2.0 * inverse_participation(coarse) *
                         static_cast<double>(coarse.bin_width));

        const auto full = measure_state(psi, 1000, 0, seed);
        try {
            ell_full.push_back(fit_localization_length(full, 0).value);
        } catch (const NumericalFailure&) {
            ell_full.push_back(std::numeric_limits<double>::infinity());
        }
    }

    const double ell_c = median(ell_coarse);
    const double xi_m = median(two_xi);
    const double ell_f = median(ell_full);

    const bool ell_ok = std::abs(ell_c - theory) / theory <= 0.30;
    const bool xi_ok = std::abs(xi_m - theory) / theory <= 0.30;
    const bool closer = std::abs(ell_c - theory) < std::abs(ell_f - theory);

    std::printf("  reference length pi^2 k^2/3 = %.3f, 30%% band [%.2f, %.2f]\n",
                theory, 0.7 * theory, 1.3 * theory);
    std::printf("  [%s] median coarse ell (N_M=5000, b=2): %.2f\n",
                ell_ok ? "pass" : "fail", ell_c);
    std::printf("  [%s] median 2 xi (momentum units): %.2f\n",
                xi_ok ? "pass" : "fail", xi_m);
    std::printf("  [%s] coarse closer to reference than full-res tail fit "
                "(N_M=1000): %.2f vs %.2f\n",
                closer ? "pass" : "fail", ell_c, ell_f);
    if (!ell_ok || !xi_ok) {
        std::printf("  note: with n=6, L=10 the torus fixes T = 5 pi/16, a "
                    "low-order rational multiple of pi; the free rotation is\n");
        std::printf("  resonant there and the t=50 state spreads over the "
                    "register instead of localizing at the ell ~ 6.8 scale,\n");
        std::printf("  so both estimators sit far above the reference value. "
                    "The protocol itself is exercised end to end.\n");
    }
    return ell_ok && xi_ok && closer;
}

// ---- criterion 8: three-qubit localized/ergodic contrast -------------------

struct Fig2Case {
    double xi = 0.0;
    double peak = 0.0;  // probability at m0
};

Fig2Case three_qubit_case(int L, int n_K, std::int64_t t) {
    std::vector<std::vector<double>> snaps;
    for (int i = 0; i < n_K; ++i) {
        ParamSpec spec;
        spec.n = 3;
        spec.L = L;
        spec.K = 1.4 + (n_K == 1 ? 0.0 : 0.1 * i / (n_K - 1.0));
        MapParams p = derive_params(spec);
        StateVector psi = init_momentum_state(p);
        for (std::int64_t s = 0; s < t; ++s) floquet_step(psi);
        snaps.push_back(probabilities(psi));
    }
    const auto W = average_distributions(snaps);
    Fig2Case result;
    result.xi = inverse_participation(W);
    result.peak = W[4];  // storage index of m0 = 0
    return result;
}

bool criterion_three_qubit() {
    const Fig2Case loc = three_qubit_case(5, 10, 50);
    const Fig2Case erg = three_qubit_case(1, 100, 50);

    const bool ipr_ok = loc.xi < 0.5 * erg.xi;
    const double ratio = loc.peak / erg.peak;
    const bool peak_ok = ratio >= 3.0;

    std::printf("  K-averaged over [1.4, 1.5]; t = 50\n");
    std::printf("  [%s] xi(L=5) = %.3f < 0.5 * xi(L=1) = %.3f\n",
                ipr_ok ? "pass" : "fail", loc.xi, 0.5 * erg.xi);
    std::printf("  [%s] W(m0) contrast: %.4f / %.4f = %.2fx (required >= 3x)\n",
                peak_ok ? "pass" : "fail", loc.peak, erg.peak, ratio);
    if (!peak_ok) {
        const Fig2Case loc3 = three_qubit_case(5, 10, 3);
        const Fig2Case erg3 = three_qubit_case(1, 100, 3);
        std::printf("  note: the >= 3x peak contrast holds early in the "
                    "evolution (%.2fx at t=3) but relaxes by t=50 as the\n",
                    loc3.peak / erg3.peak);
        std::printf("  localized average spreads over its ell ~ few levels; "
                    "the eight-level register leaves no room between the\n");
        std::printf("  localized spread and full ergodic coverage at this "
                    "snapshot time.\n");
    }
    return ipr_ok && peak_ok;
}

// ---- criterion 9: fidelity readout ----------------------------------------

bool criterion_fidelity() {
    MapParams p = localized_reference_params();

    const FitReport unper_direct = fidelity(p, 0.0, 10, FidelityMethod::Direct);
    const FitReport unper_scatter =
        fidelity(p, 0.0, 10, FidelityMethod::ScatteringExact);
    const double unper_err = std::max(std::abs(unper_direct.value - 1.0),
                                      std::abs(unper_scatter.value - 1.0));

    const double eps = 0.01;
    double worst_gap = 0.0;
    for (std::int64_t t = 1; t <= 50; ++t) {
        const double f_direct = fidelity(p, eps, t, FidelityMethod::Direct).value;
        const double f_exact =
            fidelity(p, eps, t, FidelityMethod::ScatteringExact).value;
        worst_gap = std::max(worst_gap, std::abs(f_direct - f_exact));
    }

    const FitReport exact = fidelity(p, eps, 10, FidelityMethod::ScatteringExact);
    const FitReport sampled =
        fidelity(p, eps, 10, FidelityMethod::ScatteringSampled, 10000, 5);
    const double gap_sampled = std::abs(sampled.value - exact.value);
    const bool sampled_ok = gap_sampled <= 3.0 * sampled.std_error + 1e-12;

    const bool pass = unper_err < 1e-12 && worst_gap < 1e-10 && sampled_ok;
    std::printf("  epsilon=0: |f - 1| = %.3e (budget 1e-12)\n", unper_err);
    std::printf("  direct vs scattering, t <= 50: max gap %.3e (budget 1e-10)\n",
                worst_gap);
    std::printf("  sampled (n_samples=1e4): |f - exact| = %.5f vs 3 sigma = "
                "%.5f\n",
                gap_sampled, 3.0 * sampled.std_error);
    return pass;
}

// ---- criterion 10: sampling error scaling ----------------------------------

bool criterion_sampling_scaling() {
    MapParams p = localized_reference_params();
    StateVector psi = init_momentum_state(p);
    for (int t = 0; t < 50; ++t) floquet_step(psi);
    const double ell_true = fit_localization_length(probabilities(psi), 0, p.N).value;

    const std::vector<std::int64_t> budgets = {500, 1000, 2000, 4000};
    std::vector<double> median_err(budgets.size());
    for (std::size_t j = 0; j < budgets.size(); ++j) {
        std::vector<double> errors;
        for (std::uint64_t s = 1; s <= 50; ++s) {
            const auto hist = measure_state(psi, budgets[j], 0,
                                            s * budgets.size() + j);
            try {
                errors.push_back(
                    std::abs(fit_localization_length(hist, 0).value - ell_true));
            } catch (const NumericalFailure&) {
                errors.push_back(std::numeric_limits<double>::infinity());
            }
        }
        median_err[j] = median(errors);
    }

    double factor = 1.0;
    for (std::size_t j = 0; j + 1 < budgets.size(); ++j)
        factor *= median_err[j] / median_err[j + 1];
    factor = std::cbrt(factor);

    const bool pass = factor >= 1.2 && factor <= 1.7;
    std::printf("  ell reference (exact profile): %.3f\n", ell_true);
    for (std::size_t j = 0; j < budgets.size(); ++j)
        std::printf("  median |ell - ref| at N_M=%lld: %.4f\n",
                    static_cast<long long>(budgets[j]), median_err[j]);
    std::printf("  error contraction per doubling: %.3f (required in "
                "[1.2, 1.7]; 1/nu^2 sampling predicts sqrt2 = 1.414)\n",
                factor);
    return pass;
}

// ---- criterion 11: diffusive profile shape ---------------------------------

bool criterion_profile() {
    MapParams p;
    p.K = std::numbers::sqrt2;
    p.T = 1.0;
    p.k = p.K;
    p.boundary = BoundaryMode::Cylinder;

    std::vector<std::int64_t> times;
    for (std::int64_t t = 0; t <= 100; t += 5) times.push_back(t);
    const auto moments = ensemble_evolve(p, 10000, 100, 2, times);
    const double D = fit_diffusion_coefficient(moments).value;

    const auto final_J = ensemble_final_J(p, 10000, 100, 2);
    const GaussianCheck check = gaussian_profile_check(final_J, D, 0.0, 100.0);
    const double rel_var = std::abs(check.empirical_var - D * 100.0) / (D * 100.0);

    const bool pass = check.pass && rel_var <= 0.20;
    std::printf("  profile test: KS = %.4f, p = %.3f (pass means p > 0.01)\n",
                check.ks_statistic, check.p_value);
    std::printf("  var(t=100) = %.1f vs D*t = %.1f, rel err %.1f%% (budget "
                "20%%)\n",
                check.empirical_var, D * 100.0, 100.0 * rel_var);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <criterion 1..11>\n", argv[0]);
        return 2;
    }
    const int criterion = std::atoi(argv[1]);
    bool pass = false;
    switch (criterion) {
        case 1: pass = criterion_gate_equivalence(); break;
        case 2: pass = criterion_gate_count(); break;
        case 3: pass = criterion_lyapunov(); break;
        case 4: pass = criterion_diffusion(); break;
        case 5: pass = criterion_anomalous(); break;
        case 6: pass = criterion_localization(); break;
        case 7: pass = criterion_measurement(); break;
        case 8: pass = criterion_three_qubit(); break;
        case 9: pass = criterion_fidelity(); break;
        case 10: pass = criterion_sampling_scaling(); break;
        case 11: pass = criterion_profile(); break;
        default:
            std::fprintf(stderr, "unknown criterion %d\n", criterion);
            return 2;
    }
    std::printf("criterion %d: %s\n", criterion, pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}
