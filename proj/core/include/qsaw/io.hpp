#pragma once

#include <string>
#include <vector>

#include "qsaw/analysis.hpp"
#include "qsaw/classical.hpp"
#include "qsaw/propagator.hpp"

namespace qsaw {

// All text output uses %.17g so reruns with the same seed are
// byte-identical and values round-trip exactly.

std::string format_double(double v);

// State CSV: header m,re_psi,im_psi,W_m; one row per level.
void write_state_csv(const StateVector& psi, const std::string& path);

// Raw state dump: 16-byte header (magic "QSAW", u32 n, u32 basis tag,
// 4 zero bytes), then N little-endian (re, im) f64 pairs.
void write_state_binary(const StateVector& psi, const std::string& path);
StateVector read_state_binary(const std::string& path, const MapParams& params);

// Ensemble CSV: t,mean_J,var_J,n_traj.
void write_ensemble_csv(const std::vector<EnsembleMoments>& moments,
                        const std::string& path);

// Histogram CSV: bin_low_m,bin_high_m,count,empirical_probability.
void write_histogram_csv(const MeasurementHistogram& hist, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

// Probability series CSV: m,W_m.
void write_distribution_csv(const std::vector<double>& W, std::int64_t N,
                            const std::string& path);

}  // namespace qsaw
