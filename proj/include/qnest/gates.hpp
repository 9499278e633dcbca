#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qnest/errors.hpp"
#include "qnest/state_vector.hpp"
#include "qnest/unitary_matrix.hpp"

namespace qnest {

// Gates are defined by bit semantics under the engine's msb-first ordering,
// never by raw index lists, so the same gate means the same thing regardless
// of which rendering convention a circuit diagram uses. Applications shuffle
// amplitudes over index strides; dense matrices are reserved for oracles and
// exports.

namespace detail {

inline void check_position(const StateVector& state, int pos, const char* what) {
    if (pos < 1 || pos > state.num_qubits()) {
        throw ValidationError(std::string(what) + ": qubit position " + std::to_string(pos) +
                              " out of range for " + std::to_string(state.num_qubits()) +
                              " qubits");
    }
}

inline std::size_t position_mask(const StateVector& state, int pos) {
    return std::size_t{1} << (state.num_qubits() - pos);
}

} // namespace detail

/// Controlled NOT: the target bit flips iff the control bit is 1.
inline StateVector apply_cnot(const StateVector& state, int control, int target) {
    detail::check_position(state, control, "apply_cnot");
    detail::check_position(state, target, "apply_cnot");
    if (control == target) throw ValidationError("apply_cnot: control equals target");

    const std::size_t cmask = detail::position_mask(state, control);
    const std::size_t tmask = detail::position_mask(state, target);
    std::vector<double> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Walsh-Hadamard on one position: pairs differing only in that bit are
/// mixed by (1/sqrt 2)[1 1; 1 -1].
inline StateVector apply_hadamard(const StateVector& state, int k) {
    detail::check_position(state, k, "apply_hadamard");
    const std::size_t mask = detail::position_mask(state, k);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        const double x = amps[i];
        const double y = amps[i | mask];
        amps[i] = (x + y) * inv_sqrt2;
        amps[i | mask] = (x - y) * inv_sqrt2;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Two-control XOR gate: the target flips iff bit(c1) XOR bit(c2) = 1.
/// Equals two CNOTs sharing the target.
inline StateVector apply_xor_cnot(const StateVector& state, int c1, int c2, int target) {
    detail::check_position(state, c1, "apply_xor_cnot");
    detail::check_position(state, c2, "apply_xor_cnot");
    detail::check_position(state, target, "apply_xor_cnot");
    if (c1 == c2 || c1 == target || c2 == target) {
        throw ValidationError("apply_xor_cnot: positions must be distinct");
    }
    const std::size_t m1 = detail::position_mask(state, c1);
    const std::size_t m2 = detail::position_mask(state, c2);
    const std::size_t tmask = detail::position_mask(state, target);
    std::vector<double> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool xored = static_cast<bool>(i & m1) != static_cast<bool>(i & m2);
        if (xored && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Toffoli: the target flips iff both control bits are 1.
inline StateVector apply_toffoli(const StateVector& state, int c1, int c2, int target) {
    detail::check_position(state, c1, "apply_toffoli");
    detail::check_position(state, c2, "apply_toffoli");
    detail::check_position(state, target, "apply_toffoli");
    if (c1 == c2 || c1 == target || c2 == target) {
        throw ValidationError("apply_toffoli: positions must be distinct");
    }
    const std::size_t m1 = detail::position_mask(state, c1);
    const std::size_t m2 = detail::position_mask(state, c2);
    const std::size_t tmask = detail::position_mask(state, target);
    std::vector<double> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & m1) && (i & m2) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

namespace detail {

inline void check_bijection(std::span<const std::size_t> map, std::size_t dim, const char* what) {
    if (map.size() != dim) {
        throw ValidationError(std::string(what) + ": map size " + std::to_string(map.size()) +
                              " does not match dimension " + std::to_string(dim));
    }
    std::vector<bool> seen(dim, false);
    for (std::size_t v : map) {
        if (v >= dim || seen[v]) {
            throw ValidationError(std::string(what) + ": map is not a bijection");
        }
        seen[v] = true;
    }
}

} // namespace detail

/// Output amplitude at i = input amplitude at map[i].
inline StateVector apply_permutation(const StateVector& state, std::span<const std::size_t> map) {
    detail::check_bijection(map, state.dimension(), "apply_permutation");
    std::vector<double> out(state.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = state[map[i]];
    return StateVector::from_amplitudes(std::move(out));
}

/// Full-register dense application; the matrix must be unitary.
inline StateVector apply_dense(const StateVector& state, const UnitaryMatrix& matrix) {
    if (matrix.dim() != state.dimension()) {
        throw ValidationError("apply_dense: matrix dimension " + std::to_string(matrix.dim()) +
                              " does not match state dimension " +
                              std::to_string(state.dimension()));
    }
    if (!matrix.is_unitary()) {
        throw ValidationError("apply_dense: matrix is not unitary");
    }
    return StateVector::from_amplitudes(matrix.apply(state.amplitudes()));
}

/// Renders an index permutation under the opposite bit-order convention
/// (msb-first <-> lsb-first) by bit-reversing both domain and codomain.
/// This reproduces circuit-diagram permutation lists written in the other
/// convention.
inline std::vector<std::size_t> permutation_reversed_convention(std::span<const std::size_t> map,
                                                                int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    detail::check_bijection(map, dim, "permutation_reversed_convention");
    auto reverse_bits = [num_qubits](std::size_t x) {
        std::size_t out = 0;
        for (int b = 0; b < num_qubits; ++b) {
            out = (out << 1) | (x & 1);
            x >>= 1;
        }
        return out;
    };
    std::vector<std::size_t> translated(dim);
    for (std::size_t i = 0; i < dim; ++i) translated[reverse_bits(i)] = reverse_bits(map[i]);
    return translated;
}

// Semantic gate descriptions, 1-based positions. Construction validates
// whatever can be validated without knowing the register size; the rest is
// checked at application.

struct CnotGate {
    int control;
    int target;
};

struct HadamardGate {
    int qubit;
};

struct XorCnotGate {
    int control1;
    int control2;
    int target;
};

struct ToffoliGate {
    int control1;
    int control2;
    int target;
};

struct PermutationGate {
    explicit PermutationGate(std::vector<std::size_t> index_map) : map(std::move(index_map)) {
        detail::check_bijection(map, map.size(), "PermutationGate");
    }
    std::vector<std::size_t> map;
};

struct DenseGate {
    explicit DenseGate(UnitaryMatrix m) : matrix(std::move(m)) {
        if (!matrix.is_unitary()) {
            throw ValidationError("DenseGate: matrix is not unitary");
        }
    }
    UnitaryMatrix matrix;
};

using Gate = std::variant<CnotGate, HadamardGate, XorCnotGate, ToffoliGate, PermutationGate, DenseGate>;

inline StateVector apply_gate(const StateVector& state, const Gate& gate) {
    return std::visit(
        [&state](const auto& g) -> StateVector {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CnotGate>) {
                return apply_cnot(state, g.control, g.target);
            } else if constexpr (std::is_same_v<T, HadamardGate>) {
                return apply_hadamard(state, g.qubit);
            } else if constexpr (std::is_same_v<T, XorCnotGate>) {
                return apply_xor_cnot(state, g.control1, g.control2, g.target);
            } else if constexpr (std::is_same_v<T, ToffoliGate>) {
                return apply_toffoli(state, g.control1, g.control2, g.target);
            } else if constexpr (std::is_same_v<T, PermutationGate>) {
                return apply_permutation(state, g.map);
            } else {
                return apply_dense(state, g.matrix);
            }
        },
        gate);
}

inline StateVector apply_circuit(const StateVector& state, std::span<const Gate> circuit) {
    StateVector out = state;
    for (const Gate& g : circuit) out = apply_gate(out, g);
    return out;
}

} // namespace qnest
