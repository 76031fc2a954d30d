#include "qsaw/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qsaw/errors.hpp"

namespace qsaw {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    return out;
}

void check_stream(const std::ostream& out, const std::string& path) {
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_state_csv(const StateVector& psi, const std::string& path) {
    auto out = open_out(path, std::ios::out);
    out << "m,re_psi,im_psi,W_m\n";
    const std::int64_t half = psi.params.N / 2;
    for (std::int64_t s = 0; s < psi.params.N; ++s) {
        const auto& a = psi.amp[static_cast<std::size_t>(s)];
        out << (s - half) << ',' << format_double(a.real()) << ','
            << format_double(a.imag()) << ',' << format_double(std::norm(a)) << '\n';
    }
    check_stream(out, path);
}

void write_state_binary(const StateVector& psi, const std::string& path) {
    auto out = open_out(path, std::ios::out | std::ios::binary);
    char header[16] = {};
    std::memcpy(header, "QSAW", 4);
    const auto n = static_cast<std::uint32_t>(psi.params.n);
    const auto basis = static_cast<std::uint32_t>(psi.basis);
    std::memcpy(header + 4, &n, 4);
    std::memcpy(header + 8, &basis, 4);
    out.write(header, sizeof header);
    for (const auto& a : psi.amp) {
        const double re = a.real();
        const double im = a.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof re);
        out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
    check_stream(out, path);
}

StateVector read_state_binary(const std::string& path, const MapParams& params) {
    std::ifstream in(path, std::ios::in | std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    char header[16];
    in.read(header, sizeof header);
    if (!in || std::memcmp(header, "QSAW", 4) != 0)
        throw ConfigError("'" + path + "' is not a state dump");
    std::uint32_t n = 0, basis = 0;
    std::memcpy(&n, header + 4, 4);
    std::memcpy(&basis, header + 8, 4);
    if (static_cast<int>(n) != params.n)
        throw WidthMismatch("state dump has n = " + std::to_string(n) +
                            ", parameters say n = " + std::to_string(params.n));
    if (basis > 1) throw ConfigError("'" + path + "' has an unknown basis tag");

    StateVector psi;
    psi.params = params;
    psi.basis = static_cast<Basis>(basis);
    psi.amp.resize(std::size_t{1} << n);
    for (auto& a : psi.amp) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        a = {re, im};
    }
    if (!in) throw ConfigError("'" + path + "' ends before the state does");
    return psi;
}

void write_ensemble_csv(const std::vector<EnsembleMoments>& moments,
                        const std::string& path) {
    auto out = open_out(path, std::ios::out);
    out << "t,mean_J,var_J,n_traj\n";
    for (const auto& m : moments)
        out << m.t << ',' << format_double(m.mean_J) << ','
            << format_double(m.var_J) << ',' << m.sample_count << '\n';
    check_stream(out, path);
}

void write_histogram_csv(const MeasurementHistogram& hist, const std::string& path) {
    auto out = open_out(path, std::ios::out);
    out << "bin_low_m,bin_high_m,count,empirical_probability\n";
    const std::int64_t half = std::int64_t{1} << (hist.n - 1);
    for (const auto& [bin, count] : hist.counts) {
        const std::int64_t low = bin * hist.bin_width - half;
        const std::int64_t high = low + hist.bin_width - 1;
        const double p =
            static_cast<double>(count) / static_cast<double>(hist.n_runs);
        out << low << ',' << high << ',' << count << ',' << format_double(p) << '\n';
    }
    check_stream(out, path);
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path, std::ios::out);
    out << content;
    check_stream(out, path);
}

void write_distribution_csv(const std::vector<double>& W, std::int64_t N,
                            const std::string& path) {
    if (static_cast<std::int64_t>(W.size()) != N)
        throw WidthMismatch("distribution has " + std::to_string(W.size()) +
                            " levels, expected " + std::to_string(N));
    auto out = open_out(path, std::ios::out);
    out << "m,W_m\n";
    for (std::int64_t s = 0; s < N; ++s)
        out << (s - N / 2) << ',' << format_double(W[static_cast<std::size_t>(s)])
            << '\n';
    check_stream(out, path);
}

}  // namespace qsaw
