#include "qsaw/params.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsaw/errors.hpp"

namespace qsaw {

namespace {

constexpr double kRelTol = 1e-12;

bool close_rel(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= kRelTol * scale;
}

}  // namespace

MapParams derive_params(const ParamSpec& spec) {
    if (spec.n < 1 || spec.n > 62)
        throw ConfigError("qubit count n must be in [1, 62], got " + std::to_string(spec.n));
    if (spec.L < 1)
        throw ConfigError("torus size L must be >= 1, got " + std::to_string(spec.L));

    MapParams p;
    p.n = spec.n;
    p.N = std::int64_t{1} << spec.n;
    p.L = spec.L;
    p.m0 = spec.m0;
    p.boundary = spec.boundary;

    if (p.m0 < -p.N / 2 || p.m0 >= p.N / 2) {
        std::ostringstream msg;
        msg << "m0 = " << p.m0 << " outside [" << -p.N / 2 << ", " << p.N / 2 << ")";
        throw InvalidMomentum(msg.str());
    }

    const double torus_T = 2.0 * std::numbers::pi * p.L / static_cast<double>(p.N);

    bool has_K = spec.K.has_value();
    bool has_k = spec.k.has_value();
    bool has_T = spec.T.has_value();

    // On the torus the quantization condition supplies T.
    if (p.boundary == BoundaryMode::Torus) {
        if (has_T && !close_rel(*spec.T, torus_T)) {
            std::ostringstream msg;
            msg << "T = " << *spec.T << " violates T = 2*pi*L/N = " << torus_T;
            throw InvalidTorus(msg.str());
        }
        p.T = torus_T;
        if (has_K && has_k) {
            if (!close_rel(*spec.K, *spec.k * p.T))
                throw OverconstrainedParams("K, k and the torus T are mutually inconsistent");
            p.K = *spec.K;
            p.k = *spec.k;
        } else if (has_K) {
            p.K = *spec.K;
            p.k = p.K / p.T;
        } else if (has_k) {
            p.k = *spec.k;
            p.K = p.k * p.T;
        } else {
            throw UnderconstrainedParams("need K or k alongside the torus relation");
        }
        return p;
    }

    // Cylinder: any T > 0; exactly two of {K, k, T} must be given.
    int given = (has_K ? 1 : 0) + (has_k ? 1 : 0) + (has_T ? 1 : 0);
    if (given < 2)
        throw UnderconstrainedParams("need two of {K, k, T} in cylinder mode");
    if (has_K && has_k && has_T) {
        if (!close_rel(*spec.K, *spec.k * *spec.T))
            throw OverconstrainedParams("K != k*T");
        p.K = *spec.K;
        p.k = *spec.k;
        p.T = *spec.T;
    } else if (has_K && has_k) {
        p.K = *spec.K;
        p.k = *spec.k;
        if (p.k == 0.0) {
            if (p.K != 0.0)
                throw ConfigError("k = 0 with K != 0 leaves T undefined");
            p.T = torus_T;  // free rotator; fall back to the torus value
        } else {
            p.T = p.K / p.k;
        }
    } else if (has_K && has_T) {
        p.K = *spec.K;
        p.T = *spec.T;
        p.k = p.K / p.T;
    } else {
        p.k = *spec.k;
        p.T = *spec.T;
        p.K = p.k * p.T;
    }
    if (p.T <= 0.0)
        throw ConfigError("kick period T must be positive");
    return p;
}

double parse_param_value(const std::string& text) {
    if (text.rfind("sqrt", 0) == 0) {
        const std::string arg = text.substr(4);
        if (arg.empty())
            throw ConfigError("malformed value '" + text + "'");
        int radicand = 0;
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), radicand);
        if (ec != std::errc{} || ptr != arg.data() + arg.size() || radicand < 0)
            throw ConfigError("malformed value '" + text + "'");
        return std::sqrt(static_cast<double>(radicand));
    }
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size())
            throw ConfigError("trailing characters in value '" + text + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed value '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("value out of range: '" + text + "'");
    }
}

std::string to_string(BoundaryMode mode) {
    return mode == BoundaryMode::Torus ? "torus" : "cylinder";
}

BoundaryMode boundary_from_string(const std::string& text) {
    if (text == "torus") return BoundaryMode::Torus;
    if (text == "cylinder") return BoundaryMode::Cylinder;
    throw ConfigError("unknown boundary mode '" + text + "'");
}

}  // namespace qsaw
