#pragma once

#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnest/cloning.hpp"
#include "qnest/errors.hpp"
#include "qnest/gates.hpp"
#include "qnest/heap_transform.hpp"
#include "qnest/nesting.hpp"
#include "qnest/state_vector.hpp"
#include "qnest/unitary_matrix.hpp"

namespace qnest {

// File documents. JSON carries full double precision; CSV columns use fixed
// formats so identical inputs always produce byte-identical files.

using json = nlohmann::json;

// ---- states: {"qubits": n, "amplitudes": [...], "ordering": "msb-first"}

inline json state_to_json(const StateVector& state) {
    return json{{"qubits", state.num_qubits()},
                {"amplitudes", state.amplitudes()},
                {"ordering", "msb-first"}};
}

inline StateVector state_from_json(const json& doc) try {
    if (!doc.is_object() || !doc.contains("qubits") || !doc.contains("amplitudes")) {
        throw ValidationError("state document: expected {qubits, amplitudes, ordering}");
    }
    if (doc.value("ordering", "") != "msb-first") {
        throw ValidationError("state document: ordering must be \"msb-first\"");
    }
    const int n = doc.at("qubits").get<int>();
    auto amps = doc.at("amplitudes").get<std::vector<double>>();
    if (n < 1 || n >= 63 || amps.size() != (std::size_t{1} << n)) {
        throw ValidationError("state document: amplitude count does not match qubit count");
    }
    return StateVector::from_amplitudes(std::move(amps));
} catch (const json::exception& e) {
    throw ValidationError(std::string("state document: ") + e.what());
}

// ---- matrices: {"dim": N, "rows": [[...], ...]}

inline json matrix_to_json(const UnitaryMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return json{{"dim", m.dim()}, {"rows", std::move(rows)}};
}

inline UnitaryMatrix matrix_from_json(const json& doc) try {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rows")) {
        throw ValidationError("matrix document: expected {dim, rows}");
    }
    const auto rows = doc.at("rows").get<std::vector<std::vector<double>>>();
    if (rows.size() != doc.at("dim").get<std::size_t>()) {
        throw ValidationError("matrix document: dim does not match row count");
    }
    return UnitaryMatrix::from_rows(rows);
} catch (const json::exception& e) {
    throw ValidationError(std::string("matrix document: ") + e.what());
}

// ---- chains: {"dim": N, "rotations": [{"plane": [p, q], "degrees": d}, ...]}

inline json chain_to_json(const RotationChain& chain) {
    json rotations = json::array();
    for (const auto& r : chain.rotations()) {
        rotations.push_back(json{{"plane", {r.p, r.q}}, {"degrees", r.degrees()}});
    }
    return json{{"dim", chain.dimension()}, {"rotations", std::move(rotations)}};
}

inline RotationChain chain_from_json(const json& doc) try {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rotations")) {
        throw ValidationError("chain document: expected {dim, rotations}");
    }
    const auto dim = doc.at("dim").get<std::size_t>();
    std::vector<GivensRotation> rotations;
    for (const auto& entry : doc.at("rotations")) {
        const auto plane = entry.at("plane").get<std::vector<std::size_t>>();
        if (plane.size() != 2) throw ValidationError("chain document: plane must be [p, q]");
        const double radians =
            entry.at("degrees").get<double>() * std::numbers::pi / 180.0;
        rotations.push_back(GivensRotation{plane[0], plane[1], radians});
    }
    return RotationChain(dim, std::move(rotations)); // validates planes
} catch (const json::exception& e) {
    throw ValidationError(std::string("chain document: ") + e.what());
}

// ---- gates: {"kind": ..., positional fields}; circuits are arrays

inline json gate_to_json(const Gate& gate) {
    return std::visit(
        [](const auto& g) -> json {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CnotGate>) {
                return json{{"kind", "cnot"}, {"control", g.control}, {"target", g.target}};
            } else if constexpr (std::is_same_v<T, HadamardGate>) {
                return json{{"kind", "h"}, {"qubit", g.qubit}};
            } else if constexpr (std::is_same_v<T, XorCnotGate>) {
                return json{{"kind", "xor_cnot"},
                            {"controls", {g.control1, g.control2}},
                            {"target", g.target}};
            } else if constexpr (std::is_same_v<T, ToffoliGate>) {
                return json{{"kind", "toffoli"},
                            {"controls", {g.control1, g.control2}},
                            {"target", g.target}};
            } else if constexpr (std::is_same_v<T, PermutationGate>) {
                return json{{"kind", "perm"}, {"map", g.map}};
            } else {
                return json{{"kind", "dense"}, {"matrix", matrix_to_json(g.matrix)}};
            }
        },
        gate);
}

inline Gate gate_from_json(const json& doc) try {
    const std::string kind = doc.value("kind", "");
    if (kind == "cnot") {
        return CnotGate{doc.at("control").get<int>(), doc.at("target").get<int>()};
    }
    if (kind == "h") {
        return HadamardGate{doc.at("qubit").get<int>()};
    }
    if (kind == "xor_cnot" || kind == "toffoli") {
        const auto controls = doc.at("controls").get<std::vector<int>>();
        if (controls.size() != 2) throw ValidationError("gate document: expected two controls");
        const int target = doc.at("target").get<int>();
        if (kind == "xor_cnot") return XorCnotGate{controls[0], controls[1], target};
        return ToffoliGate{controls[0], controls[1], target};
    }
    if (kind == "perm") {
        return PermutationGate(doc.at("map").get<std::vector<std::size_t>>());
    }
    if (kind == "dense") {
        return DenseGate(matrix_from_json(doc.at("matrix")));
    }
    throw ValidationError("gate document: unknown kind \"" + kind + "\"");
} catch (const json::exception& e) {
    throw ValidationError(std::string("gate document: ") + e.what());
}

inline json circuit_to_json(std::span<const Gate> circuit) {
    json arr = json::array();
    for (const Gate& g : circuit) arr.push_back(gate_to_json(g));
    return arr;
}

inline std::vector<Gate> circuit_from_json(const json& doc) {
    if (!doc.is_array()) throw ValidationError("circuit document: expected an array of gates");
    std::vector<Gate> circuit;
    for (const auto& entry : doc) circuit.push_back(gate_from_json(entry));
    return circuit;
}

// ---- CSV

inline std::string histogram_csv(const ShotHistogram& hist) {
    char line[64];
    std::string out = "outcome,count,frequency\n";
    for (int outcome = 0; outcome < 2; ++outcome) {
        std::snprintf(line, sizeof line, "%d,%llu,%.6f\n", outcome,
                      static_cast<unsigned long long>(hist.counts[outcome]),
                      hist.frequency(outcome));
        out += line;
    }
    return out;
}

inline std::string sweep_csv(std::span<const SweepPoint> points) {
    char line[96];
    std::string out = "angle_degrees,fidelity,exact\n";
    for (const auto& p : points) {
        std::snprintf(line, sizeof line, "%.4f,%.12f,%d\n", p.angle_degrees, p.fidelity,
                      p.exact ? 1 : 0);
        out += line;
    }
    return out;
}

// ---- files

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

inline void write_json_file(const std::string& path, const json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

} // namespace qnest
