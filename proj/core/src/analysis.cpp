#include "qsaw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsaw/errors.hpp"
#include "qsaw/io.hpp"

namespace qsaw {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
    double residual_rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0)
        throw InsufficientSupport("fit abscissae carry no spread");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.residual_rms = std::sqrt(ss_res / n);
    if (x.size() > 2)
        fit.slope_err = std::sqrt(ss_res / (n - 2.0) / (sxx - sx * sx / n));
    return fit;
}

FitReport localization_from_points(std::vector<double>&& d,
                                   std::vector<double>&& lnw) {
    if (d.size() < 4)
        throw InsufficientSupport("only " + std::to_string(d.size()) +
                                  " points above the probability floor");
    const LineFit fit = least_squares(d, lnw);
    // A flat profile can land at a fp-noise slope of either sign; anything
    // shallower than the accumulation noise floor is not a decay.
    double y_scale = 0.0, x_lo = d.front(), x_hi = d.front();
    for (std::size_t i = 0; i < d.size(); ++i) {
        y_scale = std::max(y_scale, std::abs(lnw[i]));
        x_lo = std::min(x_lo, d[i]);
        x_hi = std::max(x_hi, d[i]);
    }
    const double noise_slope =
        -1e-13 * (y_scale + 1.0) / std::max(x_hi - x_lo, 1.0);
    if (fit.slope >= noise_slope)
        throw NonDecaying("profile slope " + std::to_string(fit.slope) +
                          " is not negative");
    FitReport report;
    report.quantity = FitQuantity::LocalizationLength;
    report.value = -2.0 / fit.slope;
    report.std_error = 2.0 * fit.slope_err / (fit.slope * fit.slope);
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    report.window_lo = *lo;
    report.window_hi = *hi;
    report.n_points = static_cast<std::int64_t>(d.size());
    report.residual_rms = fit.residual_rms;
    return report;
}

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

std::string to_string(FitQuantity q) {
    switch (q) {
        case FitQuantity::LocalizationLength: return "localization_length";
        case FitQuantity::IprLength: return "ipr_length";
        case FitQuantity::DiffusionCoefficient: return "diffusion_coefficient";
        case FitQuantity::AnomalousExponent: return "anomalous_exponent";
        case FitQuantity::Fidelity: return "fidelity";
    }
    return "unknown";
}

FitReport fit_localization_length(const std::vector<double>& W, std::int64_t m0,
                                  std::int64_t N) {
    if (static_cast<std::int64_t>(W.size()) != N)
        throw WidthMismatch("distribution has " + std::to_string(W.size()) +
                            " levels, expected " + std::to_string(N));
    constexpr double kFloor = 1e-12;
    std::vector<double> d, lnw;
    for (std::int64_t s = 0; s < N; ++s) {
        if (W[static_cast<std::size_t>(s)] <= kFloor) continue;
        d.push_back(std::abs(static_cast<double>(s - N / 2 - m0)));
        lnw.push_back(std::log(W[static_cast<std::size_t>(s)]));
    }
    return localization_from_points(std::move(d), std::move(lnw));
}

FitReport fit_localization_length(const MeasurementHistogram& hist, std::int64_t m0) {
    if (hist.n_runs < 1) throw InsufficientData("histogram holds no runs");
    const std::int64_t half = std::int64_t{1} << (hist.n - 1);
    const double floor_count = 5.0;
    std::vector<double> d, lnw;
    for (const auto& [bin, count] : hist.counts) {
        if (static_cast<double>(count) <= floor_count) continue;
        const double center = static_cast<double>(bin * hist.bin_width) +
                              0.5 * static_cast<double>(hist.bin_width - 1) -
                              static_cast<double>(half);
        d.push_back(std::abs(center - static_cast<double>(m0)));
        lnw.push_back(std::log(static_cast<double>(count) /
                               static_cast<double>(hist.n_runs)));
    }
    FitReport report = localization_from_points(std::move(d), std::move(lnw));
    // Bin centers carry momentum units, so the length already does too.
    return report;
}

double inverse_participation(const std::vector<double>& p) {
    double s2 = 0.0;
    for (const double v : p) s2 += v * v;
    if (s2 <= 0.0) throw InsufficientData("distribution is identically zero");
    return 1.0 / s2;
}

double inverse_participation(const MeasurementHistogram& hist) {
    if (hist.n_runs < 1) throw InsufficientData("histogram holds no runs");
    double s2 = 0.0;
    for (const auto& [bin, count] : hist.counts) {
        const double p = static_cast<double>(count) / static_cast<double>(hist.n_runs);
        s2 += p * p;
    }
    if (s2 <= 0.0) throw InsufficientData("histogram is empty");
    return 1.0 / s2;
}

namespace {

FitReport ipr_report(double xi, std::int64_t support) {
    FitReport report;
    report.quantity = FitQuantity::IprLength;
    report.value = 2.0 * xi;
    report.n_points = support;
    return report;
}

}  // namespace

FitReport inverse_participation_ratio(const std::vector<double>& p) {
    std::int64_t support = 0;
    for (const double v : p)
        if (v > 0.0) ++support;
    return ipr_report(inverse_participation(p), support);
}

FitReport inverse_participation_ratio(const MeasurementHistogram& hist) {
    std::int64_t support = 0;
    for (const auto& [bin, count] : hist.counts)
        if (count > 0) ++support;
    return ipr_report(inverse_participation(hist), support);
}

double theoretical_localization(const MapParams& params) {
    return std::numbers::pi * std::numbers::pi / 3.0 * params.k * params.k;
}

DiffusionTheory rpa_diffusion(double K) {
    if (K <= 0.0)
        throw NonPositiveK("diffusion laws need K > 0, got " + std::to_string(K));
    DiffusionTheory theory;
    const double chaotic = std::numbers::pi * std::numbers::pi / 3.0 * K * K;
    const double cantori = 3.3 * std::pow(K, 2.5);
    if (K > 1.0) {
        theory.D = chaotic;
        theory.regime = DiffusionRegime::Chaotic;
    } else if (K < 1.0) {
        theory.D = cantori;
        theory.regime = DiffusionRegime::Cantori;
    } else {
        theory.D = chaotic;
        theory.regime = DiffusionRegime::Boundary;
        theory.D_other_branch = cantori;
    }
    return theory;
}

FitReport fit_diffusion_coefficient(const std::vector<EnsembleMoments>& moments) {
    if (moments.size() < 2)
        throw InsufficientData("diffusion fit needs at least two time points");
    const double t0 = static_cast<double>(moments.front().t);
    const double v0 = moments.front().var_J;
    std::vector<double> slopes;
    slopes.reserve(moments.size() - 1);
    for (std::size_t i = 1; i < moments.size(); ++i) {
        const double dt = static_cast<double>(moments[i].t) - t0;
        if (dt <= 0.0)
            throw InvalidHorizon("time points must increase for the diffusion fit");
        slopes.push_back((moments[i].var_J - v0) / dt);
    }
    FitReport report;
    report.quantity = FitQuantity::DiffusionCoefficient;
    double mean = 0.0;
    for (const double s : slopes) mean += s;
    mean /= static_cast<double>(slopes.size());
    report.value = mean;
    if (slopes.size() > 1) {
        double ss = 0.0;
        for (const double s : slopes) ss += (s - mean) * (s - mean);
        report.std_error = std::sqrt(ss / (static_cast<double>(slopes.size()) - 1.0) /
                                     static_cast<double>(slopes.size()));
    }
    report.window_lo = t0;
    report.window_hi = static_cast<double>(moments.back().t);
    report.n_points = static_cast<std::int64_t>(moments.size());
    double ss_res = 0.0;
    for (std::size_t i = 1; i < moments.size(); ++i) {
        const double dt = static_cast<double>(moments[i].t) - t0;
        const double r = moments[i].var_J - (v0 + mean * dt);
        ss_res += r * r;
    }
    report.residual_rms = std::sqrt(ss_res / static_cast<double>(slopes.size()));
    return report;
}

FitReport fit_anomalous_exponent(const std::vector<EnsembleMoments>& moments,
                                 double t_lo, double t_hi) {
    std::vector<double> lnt, lnv;
    for (const auto& m : moments) {
        const double t = static_cast<double>(m.t);
        if (t <= 0.0) continue;
        if (t < t_lo) continue;
        if (t_hi > 0.0 && t > t_hi) continue;
        if (m.var_J <= 0.0)
            throw NonPositiveVariance("variance " + std::to_string(m.var_J) +
                                      " at t = " + std::to_string(m.t));
        lnt.push_back(std::log(t));
        lnv.push_back(std::log(m.var_J));
    }
    if (lnt.size() < 5)
        throw InsufficientData("exponent fit needs >= 5 usable time points");
    const auto [lo, hi] = std::minmax_element(lnt.begin(), lnt.end());
    if ((*hi - *lo) / std::numbers::ln10 < 1.5)
        throw InsufficientData("exponent fit needs >= 1.5 decades in t");
    const LineFit fit = least_squares(lnt, lnv);
    FitReport report;
    report.quantity = FitQuantity::AnomalousExponent;
    report.value = fit.slope;
    report.std_error = fit.slope_err;
    report.window_lo = std::exp(*lo);
    report.window_hi = std::exp(*hi);
    report.n_points = static_cast<std::int64_t>(lnt.size());
    report.residual_rms = fit.residual_rms;
    return report;
}

GaussianCheck gaussian_profile_check(std::vector<double> samples, double D,
                                     double J0, double t) {
    if (samples.size() < 2)
        throw InsufficientData("profile check needs at least two samples");
    const double variance = D * t;
    if (variance <= 0.0)
        throw NonPositiveVariance("model variance D*t = " + std::to_string(variance));
    std::sort(samples.begin(), samples.end());
    const double sigma = std::sqrt(variance);
    const auto n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = 0.5 * std::erfc(-(samples[i] - J0) / (sigma * std::numbers::sqrt2));
        const double below = f - static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n - f;
        ks = std::max({ks, below, above});
    }
    GaussianCheck check;
    check.ks_statistic = ks;
    const double root_n = std::sqrt(n);
    check.p_value = kolmogorov_q((root_n + 0.12 + 0.11 / root_n) * ks);
    check.pass = check.p_value > 0.01;
    double mean = 0.0;
    for (const double s : samples) mean += s;
    mean /= n;
    double ss = 0.0;
    for (const double s : samples) ss += (s - mean) * (s - mean);
    check.empirical_var = ss / (n - 1.0);
    return check;
}

std::vector<double> average_distributions(const std::vector<std::vector<double>>& snaps) {
    if (snaps.empty()) throw InsufficientData("no snapshots to average");
    std::vector<double> mean(snaps.front().size(), 0.0);
    for (const auto& snap : snaps) {
        if (snap.size() != mean.size())
            throw WidthMismatch("snapshot sizes differ");
        for (std::size_t i = 0; i < snap.size(); ++i) mean[i] += snap[i];
    }
    const auto count = static_cast<double>(snaps.size());
    for (auto& v : mean) v /= count;
    return mean;
}

std::string fit_report_json(const FitReport& report) {
    std::ostringstream out;
    out << "{\"quantity\":\"" << to_string(report.quantity) << "\""
        << ",\"value\":" << format_double(report.value)
        << ",\"std_error\":" << format_double(report.std_error)
        << ",\"window_lo\":" << format_double(report.window_lo)
        << ",\"window_hi\":" << format_double(report.window_hi)
        << ",\"n_points\":" << report.n_points
        << ",\"residual_rms\":" << format_double(report.residual_rms) << "}";
    return out.str();
}

}  // namespace qsaw
