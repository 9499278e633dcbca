#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qnest/errors.hpp"
#include "qnest/rng.hpp"

namespace qnest {

/// Norm tolerance accepted when constructing states.
inline constexpr double kNormTolerance = 1e-9;
/// Tolerance for quantities derived from already-valid states.
inline constexpr double kDerivedTolerance = 1e-12;

namespace detail {

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline int log2_exact(std::size_t x) {
    int n = 0;
    while ((std::size_t{1} << n) < x) ++n;
    return n;
}

} // namespace detail

/// Normalized real-amplitude state over n qubits.
///
/// Basis ordering is fixed throughout the engine: the FIRST ket symbol is the
/// MOST significant index bit, so |q1 q2 ... qn> sits at amplitude index
/// q1*2^(n-1) + q2*2^(n-2) + ... + qn. Qubit positions are 1-based and
/// position 1 is the most significant bit.
class StateVector {
  public:
    /// Unit vector |index> in the 2^n-dimensional register space.
    static StateVector basis_state(int num_qubits, std::size_t index) {
        if (num_qubits < 1) {
            throw ValidationError("basis_state: qubit count must be >= 1");
        }
        const std::size_t dim = std::size_t{1} << num_qubits;
        if (index >= dim) {
            throw ValidationError("basis_state: index " + std::to_string(index) +
                                  " out of range for " + std::to_string(num_qubits) + " qubits");
        }
        std::vector<double> amps(dim, 0.0);
        amps[index] = 1.0;
        return StateVector(num_qubits, std::move(amps));
    }

    /// Builds a state from raw amplitudes. Length must be a power of two
    /// >= 2. Without renormalize the squared norm must already be within
    /// kNormTolerance of 1; with renormalize the vector is divided by its
    /// Euclidean norm (zero vectors are rejected).
    static StateVector from_amplitudes(std::vector<double> values, bool renormalize = false) {
        if (values.size() < 2 || !detail::is_power_of_two(values.size())) {
            throw ValidationError("from_amplitudes: length " + std::to_string(values.size()) +
                                  " is not a power of two >= 2");
        }
        double norm_sq = 0.0;
        for (double v : values) norm_sq += v * v;
        if (renormalize) {
            if (norm_sq == 0.0) {
                throw ValidationError("from_amplitudes: cannot renormalize the zero vector");
            }
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (double& v : values) v *= inv;
        } else if (std::abs(norm_sq - 1.0) > kNormTolerance) {
            throw ValidationError("from_amplitudes: squared norm " + std::to_string(norm_sq) +
                                  " is not within tolerance of 1 (pass renormalize to rescale)");
        }
        const int n = detail::log2_exact(values.size());
        return StateVector(n, std::move(values));
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<double>& amplitudes() const { return amps_; }
    double operator[](std::size_t i) const { return amps_[i]; }

    double norm() const {
        double s = 0.0;
        for (double v : amps_) s += v * v;
        return std::sqrt(s);
    }

    /// Value of the 1-based qubit position within basis index i.
    int bit(std::size_t index, int qubit_index) const {
        return static_cast<int>((index >> (num_qubits_ - qubit_index)) & 1u);
    }

  private:
    StateVector(int n, std::vector<double> amps) : num_qubits_(n), amps_(std::move(amps)) {}

    int num_qubits_;
    std::vector<double> amps_;
};

/// Single qubit a|0> + b|1> with real amplitudes, unit to kNormTolerance.
class Qubit {
  public:
    Qubit(double a, double b) : a_(a), b_(b) {
        if (std::abs(a * a + b * b - 1.0) > kNormTolerance) {
            throw ValidationError("Qubit: amplitudes (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") are not unit");
        }
    }

    double a() const { return a_; }
    double b() const { return b_; }

    StateVector as_state() const { return StateVector::from_amplitudes({a_, b_}); }

  private:
    double a_;
    double b_;
};

/// Tensor (Kronecker) product; u occupies the high-order index bits.
inline StateVector tensor(const StateVector& u, const StateVector& v) {
    const std::size_t du = u.dimension();
    const std::size_t dv = v.dimension();
    std::vector<double> out(du * dv);
    for (std::size_t i = 0; i < du; ++i) {
        for (std::size_t j = 0; j < dv; ++j) {
            out[i * dv + j] = u[i] * v[j];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

inline double inner(const StateVector& u, const StateVector& v) {
    if (u.num_qubits() != v.num_qubits()) {
        throw ValidationError("inner: qubit counts differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.dimension(); ++i) s += u[i] * v[i];
    return s;
}

struct Projection {
    double probability = 0.0;
    std::optional<StateVector> post_state; // absent when probability is 0
};

/// Projects onto `outcome` for the 1-based qubit position. The probability is
/// the projector weight of the input state; the post state is the
/// renormalized projection, absent when the probability is exactly zero.
inline Projection project(const StateVector& state, int qubit_index, int outcome) {
    const int n = state.num_qubits();
    if (qubit_index < 1 || qubit_index > n) {
        throw ValidationError("project: qubit index " + std::to_string(qubit_index) +
                              " out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw ValidationError("project: outcome must be 0 or 1");
    }
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (state.bit(i, qubit_index) == outcome) p += state[i] * state[i];
    }
    if (p == 0.0) return Projection{0.0, std::nullopt};

    const double inv = 1.0 / std::sqrt(p);
    std::vector<double> post(state.dimension(), 0.0);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (state.bit(i, qubit_index) == outcome) post[i] = state[i] * inv;
    }
    return Projection{p, StateVector::from_amplitudes(std::move(post))};
}

struct MeasurementRecord {
    int qubit_index;     // 1-based position that was measured
    int outcome;         // 0 or 1
    double probability;  // projector weight of the drawn outcome
    StateVector post_state;
};

/// Projective measurement of one qubit; the outcome is drawn from the
/// caller-owned stream with the project() probabilities.
inline MeasurementRecord measure(const StateVector& state, int qubit_index, ShotRng& rng) {
    const Projection zero = project(state, qubit_index, 0);
    const int outcome = rng.next_unit() < zero.probability ? 0 : 1;
    if (outcome == 0) {
        return MeasurementRecord{qubit_index, 0, zero.probability, *zero.post_state};
    }
    const Projection one = project(state, qubit_index, 1);
    return MeasurementRecord{qubit_index, 1, one.probability, *one.post_state};
}

} // namespace qnest
