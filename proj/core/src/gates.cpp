#include "qsaw/gates.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

#include "qsaw/errors.hpp"
#include "qsaw/io.hpp"

namespace qsaw {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// exp(i c (x - 1/2)^2) over the register's binary fraction x = j/2^n,
// as n^2 standard gates: ordered bit pairs (j1, j2) carry controlled
// phases c/2^(j1+j2); the diagonal pair gates absorb the linear terms
// -c/2^j. The constant c/4 is a dropped global phase. Both the kick
// (c = 2 pi^2 k, since theta - pi = 2 pi (x - 1/2)) and the free
// rotation (c = -T N^2 / 2, since m = N (x - 1/2)) have this shape.
GateList quadratic_phase_circuit(int n, double c) {
    GateList list;
    list.width = n;
    list.gates.reserve(static_cast<std::size_t>(n) * n);
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = 1; j2 <= n; ++j2) {
            if (j1 == j2) {
                const double w = std::ldexp(1.0, -2 * j1) - std::ldexp(1.0, -j1);
                list.gates.push_back({GateKind::PhaseShift, j1 - 1, -1, c * w});
            } else {
                const double w = std::ldexp(1.0, -(j1 + j2));
                list.gates.push_back(
                    {GateKind::ControlledPhaseShift, j1 - 1, j2 - 1, c * w});
            }
        }
    }
    return list;
}

}  // namespace

void GateList::append(const GateList& other) {
    if (other.width != width)
        throw WidthMismatch("appending circuit of width " + std::to_string(other.width) +
                            " to width " + std::to_string(width));
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

GateList build_uk_circuit(int n, double k) {
    return quadratic_phase_circuit(n, 2.0 * std::numbers::pi * std::numbers::pi * k);
}

GateList build_ut_circuit(int n, double T) {
    const double N = std::ldexp(1.0, n);
    return quadratic_phase_circuit(n, -0.5 * T * N * N);
}

GateList build_qft_circuit(int n, bool inverse, bool include_centering) {
    // Synthesis block: H on each qubit from the top, then controlled
    // phases +pi/2^d toward the lower qubits. Dense form: bit-reversal
    // composed with the e^{+2 pi i a b / N} transform.
    GateList list;
    list.width = n;
    if (inverse) {
        for (int l = 1; l <= n; ++l) {
            list.gates.push_back({GateKind::Hadamard, l - 1, -1, 0.0});
            for (int s = l + 1; s <= n; ++s)
                list.gates.push_back({GateKind::ControlledPhaseShift, l - 1, s - 1,
                                      std::numbers::pi * std::ldexp(1.0, -(s - l))});
        }
        if (include_centering)
            list.gates.push_back({GateKind::PhaseShift, 0, -1, std::numbers::pi});
        return list;
    }
    GateList synth = build_qft_circuit(n, true, false);
    list = conjugate_reverse(synth);
    if (include_centering)
        list.gates.insert(list.gates.begin(),
                          {GateKind::PhaseShift, 0, -1, std::numbers::pi});
    return list;
}

GateList build_floquet_circuit(const MapParams& params) {
    const int n = params.n;
    // Acting on momentum storage: synthesis transform to the angle side
    // (bit-reversed), kick with mirrored qubit labels, analysis transform
    // back, then the free rotation. The two bit reversals cancel against
    // the mirroring, and the centering twists cancel algebraically.
    GateList circuit = build_qft_circuit(n, true, false);
    GateList kick = build_uk_circuit(n, params.k);
    for (auto& g : kick.gates) {
        g.q1 = n - 1 - g.q1;
        if (g.q2 >= 0) g.q2 = n - 1 - g.q2;
    }
    circuit.append(kick);
    circuit.append(build_qft_circuit(n, false, false));
    circuit.append(build_ut_circuit(n, params.T));
    return circuit;
}

GateList conjugate_reverse(const GateList& circuit) {
    GateList out;
    out.width = circuit.width;
    out.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        Gate g = *it;
        g.phase = -g.phase;  // Hadamard is its own inverse; phase unused
        out.gates.push_back(g);
    }
    return out;
}

void apply_gates(std::vector<std::complex<double>>& amp, const GateList& circuit) {
    const auto dim = std::size_t{1} << circuit.width;
    if (amp.size() != dim)
        throw WidthMismatch("state dimension " + std::to_string(amp.size()) +
                            " does not match circuit width " +
                            std::to_string(circuit.width));
    const int w = circuit.width;
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::Hadamard: {
                const std::size_t mask = std::size_t{1} << (w - 1 - g.q1);
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & mask) continue;
                    const auto a = amp[i];
                    const auto b = amp[i | mask];
                    amp[i] = (a + b) * kInvSqrt2;
                    amp[i | mask] = (a - b) * kInvSqrt2;
                }
                break;
            }
            case GateKind::PhaseShift: {
                const std::size_t mask = std::size_t{1} << (w - 1 - g.q1);
                const auto phase = std::polar(1.0, g.phase);
                for (std::size_t i = 0; i < dim; ++i)
                    if (i & mask) amp[i] *= phase;
                break;
            }
            case GateKind::ControlledPhaseShift: {
                const std::size_t mask = (std::size_t{1} << (w - 1 - g.q1)) |
                                         (std::size_t{1} << (w - 1 - g.q2));
                const auto phase = std::polar(1.0, g.phase);
                for (std::size_t i = 0; i < dim; ++i)
                    if ((i & mask) == mask) amp[i] *= phase;
                break;
            }
        }
    }
}

void apply_gates(StateVector& psi, const GateList& circuit) {
    apply_gates(psi.amp, circuit);
}

std::vector<std::complex<double>> dense_matrix(const GateList& circuit) {
    const auto dim = std::size_t{1} << circuit.width;
    std::vector<std::complex<double>> U(dim * dim);
    std::vector<std::complex<double>> col(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::fill(col.begin(), col.end(), std::complex<double>{0.0, 0.0});
        col[c] = {1.0, 0.0};
        apply_gates(col, circuit);
        for (std::size_t r = 0; r < dim; ++r) U[r * dim + c] = col[r];
    }
    return U;
}

std::string serialize_gates(const GateList& circuit) {
    std::ostringstream out;
    out << "# width " << circuit.width << "\n";
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::Hadamard:
                out << "H " << g.q1 << "\n";
                break;
            case GateKind::PhaseShift:
                out << "P " << g.q1 << " " << format_double(g.phase) << "\n";
                break;
            case GateKind::ControlledPhaseShift:
                out << "CP " << g.q1 << " " << g.q2 << " " << format_double(g.phase)
                    << "\n";
                break;
        }
    }
    return out.str();
}

GateList parse_gates(std::istream& in) {
    GateList list;
    list.width = 0;
    bool width_given = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "#") {
            std::string key;
            ls >> key;
            if (key == "width" && (ls >> list.width)) width_given = true;
            continue;
        }
        Gate g;
        if (tok == "H") {
            g.kind = GateKind::Hadamard;
            if (!(ls >> g.q1)) throw ConfigError("malformed gate line: " + line);
        } else if (tok == "P") {
            g.kind = GateKind::PhaseShift;
            if (!(ls >> g.q1 >> g.phase))
                throw ConfigError("malformed gate line: " + line);
        } else if (tok == "CP") {
            g.kind = GateKind::ControlledPhaseShift;
            if (!(ls >> g.q1 >> g.q2 >> g.phase))
                throw ConfigError("malformed gate line: " + line);
        } else {
            throw ConfigError("unknown gate '" + tok + "'");
        }
        list.gates.push_back(g);
    }
    if (!width_given) {
        int max_q = -1;
        for (const auto& g : list.gates) max_q = std::max({max_q, g.q1, g.q2});
        list.width = max_q + 1;
    }
    return list;
}

}  // namespace qsaw
