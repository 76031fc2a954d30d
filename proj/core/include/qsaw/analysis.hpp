#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsaw/classical.hpp"
#include "qsaw/params.hpp"

namespace qsaw {

enum class FitQuantity {
    LocalizationLength,
    IprLength,
    DiffusionCoefficient,
    AnomalousExponent,
    Fidelity,
};

std::string to_string(FitQuantity q);

struct FitReport {
    FitQuantity quantity = FitQuantity::LocalizationLength;
    double value = 0.0;
    double std_error = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::int64_t n_points = 0;
    double residual_rms = 0.0;
};

// Histogram of momentum measurements; bin index = storage index >> b.
struct MeasurementHistogram {
    std::int64_t bin_width = 1;  // 2^b momentum levels
    std::map<std::int64_t, std::int64_t> counts;
    std::int64_t n_runs = 0;
    int n = 0;  // register size, for m <-> storage conversion
};

// Least-squares fit of ln W against |m - m0|, folded two-sided;
// ell = -2/slope. Exact distributions use floor 1e-12, sampled
// histograms use floor 5/N_M. Throws InsufficientSupport (< 4 points)
// and NonDecaying (slope >= 0).
FitReport fit_localization_length(const std::vector<double>& W, std::int64_t m0,
                                  std::int64_t N);
FitReport fit_localization_length(const MeasurementHistogram& hist, std::int64_t m0);

// xi = 1 / sum p^2 over the given probabilities (bin units for binned
// input); bounded by 1 <= xi <= #bins.
double inverse_participation(const std::vector<double>& p);
double inverse_participation(const MeasurementHistogram& hist);

// FitReport carrying the length estimate 2*xi.
FitReport inverse_participation_ratio(const std::vector<double>& p);
FitReport inverse_participation_ratio(const MeasurementHistogram& hist);

// ell ~ D_m ~ (pi^2/3) k^2; also the break-time estimate t*.
double theoretical_localization(const MapParams& params);

enum class DiffusionRegime { Chaotic, Cantori, Boundary };

struct DiffusionTheory {
    double D = 0.0;
    DiffusionRegime regime = DiffusionRegime::Chaotic;
    double D_other_branch = 0.0;  // populated only at the K = 1 boundary
};

// Random-phase-approximation diffusion: pi^2 K^2 / 3 for K > 1,
// 3.3 K^{5/2} for 0 < K < 1 (cantori regime); both branches at K = 1.
DiffusionTheory rpa_diffusion(double K);

// Weighted linear fit of var(t) through the initial variance;
// with 1/t^2 weights this is the mean of the per-time slopes.
FitReport fit_diffusion_coefficient(const std::vector<EnsembleMoments>& moments);

// Least-squares slope of ln var vs ln t, optionally restricted to
// [t_lo, t_hi]. Requires >= 5 points spanning >= 1.5 decades.
FitReport fit_anomalous_exponent(const std::vector<EnsembleMoments>& moments,
                                 double t_lo = 0.0, double t_hi = 0.0);

struct GaussianCheck {
    double ks_statistic = 0.0;
    double p_value = 0.0;
    bool pass = false;  // at the 1% level
    double empirical_var = 0.0;
};

// Kolmogorov-Smirnov comparison of the sample against the Fokker-Planck
// Gaussian N(J0, D*t).
GaussianCheck gaussian_profile_check(std::vector<double> samples, double D,
                                     double J0, double t);

// Pointwise time average of probability snapshots.
std::vector<double> average_distributions(const std::vector<std::vector<double>>& snaps);

std::string fit_report_json(const FitReport& report);

}  // namespace qsaw
