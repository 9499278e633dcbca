#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qnest/errors.hpp"
#include "qnest/gates.hpp"
#include "qnest/rng.hpp"
#include "qnest/state_vector.hpp"

namespace qnest {

// The nesting pipeline entangles a copy of the input qubit into a 3-qubit
// state from which one measurement recovers |M>|phi> on the first two
// qubits. Wire order after the ancilla is prepended: qubit 1 = measured
// ancilla, qubit 2 = carrier of the input amplitudes, qubit 3 = |0>.
// States stay normalized at every stage so measurement probabilities can be
// read directly off the state.

/// Intermediate states of one pipeline construction.
struct NestingStages {
    StateVector psi; // after the first CNOT: a|00> + b|11>
    StateVector chi; // ancilla prepended, second CNOT applied
    StateVector xi;  // after the two-control XOR; third qubit is |0>
};

inline NestingStages build_xi_stages(const Qubit& input) {
    const StateVector zero = StateVector::basis_state(1, 0);
    StateVector psi = apply_cnot(tensor(input.as_state(), zero), 1, 2);
    const StateVector ancilla = apply_hadamard(zero, 1);
    StateVector chi = apply_cnot(tensor(ancilla, psi), 1, 3);
    StateVector xi = apply_xor_cnot(chi, 1, 2, 3);
    return NestingStages{std::move(psi), std::move(chi), std::move(xi)};
}

/// CNOT, Hadamard ancilla, CNOT, two-control XOR:
/// (a|000> + b|010> + a|100> + b|110>) / sqrt 2.
inline StateVector build_xi(const Qubit& input) { return build_xi_stages(input).xi; }

/// Result of measuring the first qubit of xi and splitting off the parts.
struct Extraction {
    int m;               // measured first qubit
    double probability;  // projector weight of the drawn outcome (0.5 here)
    StateVector doubled; // first two qubits: |M>|phi>
    StateVector residual;// third qubit, always |0>
    Qubit recovered;     // (a, b) read back from the doubled slots
};

/// Measures qubit 1 of a pipeline state and extracts the nested 2-qubit
/// copy. Rejects inputs whose third qubit is not deterministically |0>.
inline Extraction measure_and_extract(const StateVector& xi, ShotRng& rng) {
    if (xi.num_qubits() != 3) {
        throw ValidationError("measure_and_extract: expected a 3-qubit state");
    }
    const Projection third = project(xi, 3, 0);
    if (std::abs(third.probability - 1.0) > kDerivedTolerance) {
        throw ValidationError("measure_and_extract: third qubit is not deterministically |0>");
    }

    const MeasurementRecord record = measure(xi, 1, rng);
    // drop the third bit: amplitude of |q1 q2| comes from index (q1 q2 0)
    std::vector<double> doubled(4);
    for (std::size_t i = 0; i < 4; ++i) doubled[i] = record.post_state[i << 1];
    StateVector doubled_state = StateVector::from_amplitudes(std::move(doubled));

    const std::size_t slot = record.outcome == 0 ? 0 : 2;
    Qubit recovered(doubled_state[slot], doubled_state[slot + 1]);

    return Extraction{record.outcome, record.probability, std::move(doubled_state),
                      StateVector::basis_state(1, 0), recovered};
}

/// One complete pipeline run with every intermediate retained for audit.
struct NestingRun {
    Qubit input;
    StateVector psi;
    StateVector chi;
    StateVector xi;
    MeasurementRecord record; // measurement of qubit 1 on xi
    StateVector extracted;    // 2-qubit |M>|phi>
    Qubit recovered;
};

inline NestingRun run_nesting(const Qubit& input, ShotRng& rng) {
    NestingStages stages = build_xi_stages(input);
    Extraction ex = measure_and_extract(stages.xi, rng);
    // rebuild the record from the drawn outcome; project is deterministic
    Projection drawn = project(stages.xi, 1, ex.m);
    MeasurementRecord record{1, ex.m, drawn.probability, std::move(*drawn.post_state)};
    return NestingRun{input,          std::move(stages.psi), std::move(stages.chi),
                      std::move(stages.xi), std::move(record), std::move(ex.doubled),
                      ex.recovered};
}

/// Seeded measurement counts over repeated pipeline runs.
struct ShotHistogram {
    std::uint64_t shots = 0;
    std::array<std::uint64_t, 2> counts{0, 0}; // outcomes M = 0 and M = 1
    std::uint64_t seed = 0;

    double frequency(int outcome) const {
        return static_cast<double>(counts[static_cast<std::size_t>(outcome)]) /
               static_cast<double>(shots);
    }
};

/// Runs the pipeline `shots` times with one stream seeded by `seed`;
/// deterministic across runs and platforms.
inline ShotHistogram sample(const Qubit& input, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw ValidationError("sample: shot count must be >= 1");
    const StateVector xi = build_xi(input);
    ShotRng rng(seed);
    ShotHistogram hist;
    hist.shots = shots;
    hist.seed = seed;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const MeasurementRecord r = measure(xi, 1, rng);
        ++hist.counts[static_cast<std::size_t>(r.outcome)];
    }
    return hist;
}

/// Measurement of the first qubit of a doubled state a^2|00> + ab|01> +
/// ab|10> + b^2|11>: outcome 0 with probability a^2 collapsing to
/// a|00> + b|01>, outcome 1 with probability b^2 collapsing to
/// a|10> + b|11>. Inputs that do not factor as an outer square are rejected.
struct DoubledMeasurement {
    int outcome;
    double probability;
    StateVector post;
};

inline DoubledMeasurement doubled_qubit_measurement(const StateVector& phi2, ShotRng& rng) {
    if (phi2.num_qubits() != 2) {
        throw ValidationError("doubled_qubit_measurement: expected a 2-qubit state");
    }
    // recover (a, b) up to a global sign and check the outer-square shape
    const double a = std::sqrt(std::max(0.0, phi2[0]));
    const double b = (phi2[1] < 0.0 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, phi2[3]));
    const bool doubled_form = phi2[0] >= -kNormTolerance && phi2[3] >= -kNormTolerance &&
                              std::abs(phi2[1] - phi2[2]) <= kNormTolerance &&
                              std::abs(phi2[1] - a * b) <= kNormTolerance;
    if (!doubled_form) {
        throw ValidationError("doubled_qubit_measurement: state is not a doubled qubit");
    }
    const MeasurementRecord r = measure(phi2, 1, rng);
    return DoubledMeasurement{r.outcome, r.probability, r.post_state};
}

} // namespace qnest
