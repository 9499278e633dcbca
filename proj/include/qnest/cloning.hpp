#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "qnest/errors.hpp"
#include "qnest/gates.hpp"
#include "qnest/heap_transform.hpp"
#include "qnest/state_vector.hpp"
#include "qnest/unitary_matrix.hpp"

namespace qnest {

/// Copies with squared overlap at least 1 - this are reported exact.
inline constexpr double kExactCopyTolerance = 1e-9;

/// |phi>|phi> for a single qubit: (a^2, ab, ab, b^2).
inline StateVector doubled_state(const Qubit& q) { return tensor(q.as_state(), q.as_state()); }

/// Per-state copier built from two heap-transform chains: the unitary
/// carrying (a, 0, b, 0) onto (a^2, ab, ab, b^2). Exact on the qubit it was
/// built for; not universal.
inline UnitaryMatrix copier_for(const Qubit& q) {
    const std::vector<double> x{q.a(), 0.0, q.b(), 0.0};
    const std::vector<double> y{q.a() * q.a(), q.a() * q.b(), q.a() * q.b(), q.b() * q.b()};
    return transfer_unitary(x, y);
}

/// Hand-built copier for the pair (|0> +- |1>)/sqrt 2; copies exactly those
/// two orthogonal superpositions and nothing else.
inline UnitaryMatrix hadamard_copier() {
    const double r = 1.0 / std::sqrt(2.0);
    return UnitaryMatrix::from_rows({{r, 0, 0, r}, {0, r, r, 0}, {0, -r, r, 0}, {r, 0, 0, -r}});
}

/// Hand-built transfer carrying the Bell pair (|00> + |11>)/sqrt 2 onto the
/// uniform 2-qubit superposition; an alternative to the chain-built route.
inline UnitaryMatrix bell_to_uniform_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return UnitaryMatrix::from_rows({{r, 0, r, 0}, {0, r, 0, r}, {0, -r, 0, r}, {r, 0, -r, 0}});
}

/// Three-factor form output_perm * core * input_perm of a hand-built matrix.
struct TransferFactors {
    UnitaryMatrix output_perm;
    UnitaryMatrix core;
    UnitaryMatrix input_perm;

    UnitaryMatrix product() const { return output_perm * core * input_perm; }
};

/// Factorization of bell_to_uniform_matrix into two permutations around a
/// block-diagonal core; the core is the direct sum of the Hadamard block and
/// its sign-flipped variant.
inline TransferFactors bell_to_uniform_factors() {
    const double r = 1.0 / std::sqrt(2.0);
    UnitaryMatrix left = UnitaryMatrix::from_rows(
        {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}});
    UnitaryMatrix core = UnitaryMatrix::from_rows(
        {{r, r, 0, 0}, {r, -r, 0, 0}, {0, 0, r, r}, {0, 0, -r, r}});
    UnitaryMatrix right = UnitaryMatrix::from_rows(
        {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    return TransferFactors{std::move(left), std::move(core), std::move(right)};
}

/// Same shape for the Hadamard-pair copier: identical left permutation and
/// core, different input permutation.
inline TransferFactors hadamard_copier_factors() {
    TransferFactors f = bell_to_uniform_factors();
    f.input_perm = UnitaryMatrix::from_rows(
        {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    return f;
}

/// Dense form of CNOT with control = qubit 1, target = qubit 2 (msb-first).
inline UnitaryMatrix cnot_dense_2q() {
    return UnitaryMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

/// True iff the Hadamard-pair copier equals the Bell-to-uniform transfer
/// composed with the 2-qubit CNOT permutation, entrywise to 1e-12.
inline bool hadamard_copier_composition_holds() {
    return max_abs_difference(hadamard_copier(), bell_to_uniform_matrix() * cnot_dense_2q()) <=
           1e-12;
}

/// Printed five-rotation copier for the qubit (3/5, 4/5), built from a
/// strong heap transform. Consumed as verification data at its printed
/// 4-decimal precision only; the construction is out of scope here.
inline UnitaryMatrix strong_copier_fixture() {
    return UnitaryMatrix::from_rows({{-0.4240, -0.3748, 0.7680, -0.2999},
                                     {0.7680, -0.4998, 0.0240, -0.3998},
                                     {0.2880, 0.7809, 0.3840, -0.3998},
                                     {0.3840, 0.0, 0.5120, 0.7684}});
}

/// Outcome of testing a copier on one qubit. Fidelity is the squared
/// overlap between the copier's output and the ideal doubled state; the raw
/// overlap is kept alongside.
struct CopierReport {
    UnitaryMatrix copier;
    std::optional<Qubit> built_for; // absent for hand-built copiers
    Qubit tested_on;
    double overlap;
    double fidelity;
    bool exact;
};

inline CopierReport clone_fidelity(const UnitaryMatrix& copier, const Qubit& test) {
    if (copier.dim() != 4) throw ValidationError("clone_fidelity: copier must be 4x4");
    if (!copier.is_unitary()) throw ValidationError("clone_fidelity: copier is not unitary");

    const std::vector<double> x{test.a(), 0.0, test.b(), 0.0};
    const std::vector<double> out = copier.apply(x);
    const StateVector ideal = doubled_state(test);
    double overlap = 0.0;
    for (std::size_t i = 0; i < 4; ++i) overlap += out[i] * ideal[i];
    const double fidelity = overlap * overlap;
    return CopierReport{copier,   std::nullopt, test, overlap, fidelity,
                        fidelity >= 1.0 - kExactCopyTolerance};
}

inline CopierReport clone_fidelity(const Qubit& source, const Qubit& test) {
    CopierReport report = clone_fidelity(copier_for(source), test);
    report.built_for = source;
    return report;
}

struct SweepPoint {
    double angle_degrees;
    double overlap;
    double fidelity;
    bool exact;
};

/// Fidelity of one copier over the unit circle of test qubits
/// (cos t, sin t), t = k * 360/grid degrees.
inline std::vector<SweepPoint> sweep_copier(const UnitaryMatrix& copier, int grid) {
    if (grid < 2) throw ValidationError("sweep: grid must have at least 2 points");
    std::vector<SweepPoint> points;
    points.reserve(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) {
        const double degrees = 360.0 * k / grid;
        const double t = degrees * std::numbers::pi / 180.0;
        const CopierReport r = clone_fidelity(copier, Qubit(std::cos(t), std::sin(t)));
        points.push_back(SweepPoint{degrees, r.overlap, r.fidelity, r.exact});
    }
    return points;
}

/// Sweep of the chain-built copier for `source`; the exact points show
/// which qubits that copier can actually copy.
inline std::vector<SweepPoint> no_cloning_sweep(const Qubit& source, int grid) {
    return sweep_copier(copier_for(source), grid);
}

} // namespace qnest
