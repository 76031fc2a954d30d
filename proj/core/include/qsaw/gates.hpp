#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsaw/params.hpp"
#include "qsaw/propagator.hpp"

namespace qsaw {

enum class GateKind { Hadamard, PhaseShift, ControlledPhaseShift };

// Qubit indices are 0-based with qubit 0 the most significant bit of the
// storage index (the binary expansion theta/2pi = 0.a1 a2 ... an reads
// qubit q as bit position width-1-q).
struct Gate {
    GateKind kind = GateKind::Hadamard;
    int q1 = 0;
    int q2 = -1;        // second target for controlled phases
    double phase = 0.0; // radians; unused for Hadamard
};

struct GateList {
    int width = 0;
    std::vector<Gate> gates;

    std::int64_t gate_count() const { return static_cast<std::int64_t>(gates.size()); }
    void append(const GateList& other);
};

// Kick operator exp(i k (theta - pi)^2 / 2) as exactly n^2 phase gates:
// the quadratic form over the bits of theta gives, per ordered pair
// (j1, j2), a controlled phase c/2^(j1+j2) with c = 2 pi^2 k, and the
// diagonal pairs absorb the linear bit terms. A constant phase c/4 is
// dropped (global).
GateList build_uk_circuit(int n, double k);

// Free rotation exp(-i T m^2 / 2), m = j - N/2: same bit expansion with
// c = -T N^2 / 2.
GateList build_ut_circuit(int n, double T);

// Quantum Fourier transform block: n Hadamards and n(n-1)/2 controlled
// phases. The customary qubit reversal is handled by index relabeling
// (documented, not emitted as swaps), so the dense matrix equals the
// unitary DFT composed with the bit-reversal permutation.
// include_centering adds the single phase gate realizing the (-1)^a
// twist of the centered momentum convention (m = j - N/2).
GateList build_qft_circuit(int n, bool inverse, bool include_centering = false);

// One full map iteration acting on momentum-basis storage, equal to the
// spectral floquet_step up to a global phase. Gate count is 3n^2 + n:
// the two Fourier blocks leave the intermediate angle register in
// bit-reversed order, absorbed by mirroring the kick's qubit labels.
GateList build_floquet_circuit(const MapParams& params);

// Reversed, phase-conjugated circuit: the exact inverse unitary.
GateList conjugate_reverse(const GateList& circuit);

// In-place application, gates in list order. Throws WidthMismatch.
void apply_gates(std::vector<std::complex<double>>& amp, const GateList& circuit);
void apply_gates(StateVector& psi, const GateList& circuit);

// Dense matrix (row-major, dim = 2^width), built column by column.
std::vector<std::complex<double>> dense_matrix(const GateList& circuit);

// Line-oriented serialization: `H q` | `P q phase` | `CP q1 q2 phase`.
std::string serialize_gates(const GateList& circuit);
GateList parse_gates(std::istream& in);

}  // namespace qsaw
