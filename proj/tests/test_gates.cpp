#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qnest/gates.hpp"
#include "qnest/heap_transform.hpp"
#include "oracles.hpp"

using namespace qnest;
using Catch::Matchers::WithinAbs;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

StateVector chi_state(double a, double b) {
    // (a|000> + b|011> + a|101> + b|110>) / sqrt 2
    return StateVector::from_amplitudes({a * r2, 0, 0, b * r2, 0, a * r2, b * r2, 0});
}

StateVector xi_state(double a, double b) {
    // (a|000> + b|010> + a|100> + b|110>) / sqrt 2
    return StateVector::from_amplitudes({a * r2, 0, b * r2, 0, a * r2, 0, b * r2, 0});
}

} // namespace

TEST_CASE("cnot entangles a product state", "[gates]") {
    const StateVector in = tensor(Qubit(0.6, 0.8).as_state(), StateVector::basis_state(1, 0));
    const StateVector out = apply_cnot(in, 1, 2);
    CHECK(out.amplitudes() == std::vector<double>{0.6, 0.0, 0.0, 0.8});

    CHECK(apply_cnot(StateVector::basis_state(2, 2), 1, 2).amplitudes() ==
          StateVector::basis_state(2, 3).amplitudes());
    CHECK(apply_cnot(StateVector::basis_state(2, 0), 1, 2).amplitudes() ==
          StateVector::basis_state(2, 0).amplitudes());

    CHECK_THROWS_AS(apply_cnot(in, 1, 1), ValidationError);
    CHECK_THROWS_AS(apply_cnot(in, 0, 2), ValidationError);
    CHECK_THROWS_AS(apply_cnot(in, 1, 3), ValidationError);
}

TEST_CASE("hadamard mixes the addressed bit", "[gates]") {
    const StateVector plus = apply_hadamard(StateVector::basis_state(1, 0), 1);
    CHECK_THAT(plus[0], WithinAbs(r2, 1e-15));
    CHECK_THAT(plus[1], WithinAbs(r2, 1e-15));

    const StateVector minus = apply_hadamard(StateVector::basis_state(1, 1), 1);
    CHECK_THAT(minus[0], WithinAbs(r2, 1e-15));
    CHECK_THAT(minus[1], WithinAbs(-r2, 1e-15));

    const StateVector twice = apply_hadamard(plus, 1);
    CHECK_THAT(twice[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(twice[1], WithinAbs(0.0, 1e-15));

    CHECK_THROWS_AS(apply_hadamard(plus, 2), ValidationError);
}

TEST_CASE("two-control xor unnests the entangled third bit", "[gates]") {
    const StateVector xi = apply_xor_cnot(chi_state(0.6, 0.8), 1, 2, 3);
    CHECK(oracle::max_abs_diff(xi.amplitudes(), xi_state(0.6, 0.8).amplitudes()) == 0.0);

    CHECK(apply_xor_cnot(StateVector::basis_state(3, 0), 1, 2, 3).amplitudes() ==
          StateVector::basis_state(3, 0).amplitudes());
    CHECK(apply_xor_cnot(StateVector::basis_state(3, 3), 1, 2, 3).amplitudes() ==
          StateVector::basis_state(3, 2).amplitudes());

    CHECK_THROWS_AS(apply_xor_cnot(xi, 1, 1, 3), ValidationError);
}

TEST_CASE("xor equals two cnots sharing the target", "[gates][property]") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 1000; ++rep) {
        const StateVector s = StateVector::from_amplitudes(oracle::random_unit(8, rng));
        const StateVector via_xor = apply_xor_cnot(s, 1, 2, 3);
        const StateVector via_two = apply_cnot(apply_cnot(s, 1, 3), 2, 3);
        CHECK(oracle::max_abs_diff(via_xor.amplitudes(), via_two.amplitudes()) < 1e-14);
    }
}

TEST_CASE("toffoli flips only the doubly-controlled term", "[gates]") {
    CHECK(apply_toffoli(StateVector::basis_state(3, 6), 1, 2, 3).amplitudes() ==
          StateVector::basis_state(3, 7).amplitudes());
    CHECK(apply_toffoli(StateVector::basis_state(3, 7), 1, 2, 3).amplitudes() ==
          StateVector::basis_state(3, 6).amplitudes());
    CHECK(apply_toffoli(StateVector::basis_state(3, 2), 1, 2, 3).amplitudes() ==
          StateVector::basis_state(3, 2).amplitudes());
}

TEST_CASE("permutations reindex amplitudes", "[gates]") {
    // the two-control xor as an index swap under msb-first ordering
    const std::vector<std::size_t> swap23_45{0, 1, 3, 2, 5, 4, 6, 7};
    const StateVector chi = chi_state(0.6, 0.8);
    const StateVector via_perm = apply_permutation(chi, swap23_45);
    CHECK(oracle::max_abs_diff(via_perm.amplitudes(), xi_state(0.6, 0.8).amplitudes()) == 0.0);

    // brute-force matrix oracle agrees
    const std::vector<double> via_matrix =
        oracle::matvec(oracle::permutation_matrix(swap23_45), chi.amplitudes());
    CHECK(oracle::max_abs_diff(via_perm.amplitudes(), via_matrix) == 0.0);

    const std::vector<std::size_t> id{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(apply_permutation(chi, id).amplitudes() == chi.amplitudes());

    CHECK_THROWS_AS(apply_permutation(chi, std::vector<std::size_t>{0, 0, 2, 3, 4, 5, 6, 7}),
                    ValidationError);
    CHECK_THROWS_AS(apply_permutation(chi, std::vector<std::size_t>{0, 1}), ValidationError);
}

TEST_CASE("the published lsb-first permutation list is the same gate", "[gates]") {
    const std::vector<std::size_t> msb_map{0, 1, 3, 2, 5, 4, 6, 7};
    const std::vector<std::size_t> lsb_map = permutation_reversed_convention(msb_map, 3);
    CHECK(lsb_map == std::vector<std::size_t>{0, 5, 6, 3, 4, 1, 2, 7});

    // translating twice restores the original rendering
    CHECK(permutation_reversed_convention(lsb_map, 3) == msb_map);

    // re-indexing oracle: applying the lsb list to lsb-encoded chi gives
    // lsb-encoded xi
    auto reverse3 = [](std::size_t i) {
        return ((i & 1) << 2) | (i & 2) | ((i >> 2) & 1);
    };
    const StateVector chi = chi_state(0.6, 0.8);
    const StateVector xi = xi_state(0.6, 0.8);
    std::vector<double> chi_lsb(8), xi_lsb(8);
    for (std::size_t i = 0; i < 8; ++i) {
        chi_lsb[reverse3(i)] = chi[i];
        xi_lsb[reverse3(i)] = xi[i];
    }
    const StateVector mapped =
        apply_permutation(StateVector::from_amplitudes(chi_lsb), lsb_map);
    CHECK(oracle::max_abs_diff(mapped.amplitudes(), xi_lsb) == 0.0);
}

TEST_CASE("dense application multiplies and checks unitarity", "[gates]") {
    const StateVector bell = StateVector::from_amplitudes({r2, 0, 0, r2});
    const UnitaryMatrix u =
        transfer_unitary(bell.amplitudes(), std::vector<double>{0.5, 0.5, 0.5, 0.5});
    const StateVector uniform = apply_dense(bell, u);
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(uniform[i], WithinAbs(0.5, 1e-12));

    CHECK(apply_dense(bell, UnitaryMatrix::identity(4)).amplitudes() == bell.amplitudes());

    CHECK_THROWS_AS(apply_dense(bell, UnitaryMatrix::identity(8)), ValidationError);
    UnitaryMatrix skewed = UnitaryMatrix::identity(4);
    skewed(0, 1) = 0.01;
    CHECK_THROWS_AS(apply_dense(bell, skewed), ValidationError);
    CHECK_THROWS_AS(DenseGate(skewed), ValidationError);
}

TEST_CASE("semantic gates match their brute-force matrices", "[gates][property]") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        const StateVector s = StateVector::from_amplitudes(oracle::random_unit(8, rng));
        CHECK(oracle::max_abs_diff(apply_cnot(s, 1, 3).amplitudes(),
                                   oracle::matvec(oracle::cnot_matrix(3, 1, 3),
                                                  s.amplitudes())) < 1e-12);
        CHECK(oracle::max_abs_diff(apply_xor_cnot(s, 1, 2, 3).amplitudes(),
                                   oracle::matvec(oracle::xor_cnot_matrix(3, 1, 2, 3),
                                                  s.amplitudes())) < 1e-12);
        CHECK(oracle::max_abs_diff(apply_toffoli(s, 2, 3, 1).amplitudes(),
                                   oracle::matvec(oracle::toffoli_matrix(3, 2, 3, 1),
                                                  s.amplitudes())) < 1e-12);
        CHECK(oracle::max_abs_diff(apply_hadamard(s, 2).amplitudes(),
                                   oracle::matvec(oracle::hadamard_on_matrix(3, 2),
                                                  s.amplitudes())) < 1e-12);
    }
}

TEST_CASE("gates preserve the norm and involute", "[gates][property]") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        const StateVector s = StateVector::from_amplitudes(oracle::random_unit(8, rng));
        CHECK_THAT(apply_hadamard(apply_cnot(s, 3, 1), 2).norm(), WithinAbs(1.0, 1e-12));
        CHECK(oracle::max_abs_diff(apply_cnot(apply_cnot(s, 2, 1), 2, 1).amplitudes(),
                                   s.amplitudes()) == 0.0);
        CHECK(oracle::max_abs_diff(
                  apply_xor_cnot(apply_xor_cnot(s, 3, 1, 2), 3, 1, 2).amplitudes(),
                  s.amplitudes()) == 0.0);
        CHECK(oracle::max_abs_diff(
                  apply_toffoli(apply_toffoli(s, 1, 3, 2), 1, 3, 2).amplitudes(),
                  s.amplitudes()) == 0.0);
    }
}

TEST_CASE("gate variants dispatch through apply_gate", "[gates]") {
    const StateVector in = tensor(Qubit(0.6, 0.8).as_state(), StateVector::basis_state(2, 0));
    const std::vector<Gate> circuit{
        CnotGate{1, 2},
        HadamardGate{3},
        XorCnotGate{1, 2, 3},
        ToffoliGate{1, 2, 3},
        PermutationGate(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 7, 6}),
        DenseGate(UnitaryMatrix::identity(8)),
    };
    StateVector stepped = in;
    for (const Gate& g : circuit) stepped = apply_gate(stepped, g);
    const StateVector chained = apply_circuit(in, circuit);
    CHECK(oracle::max_abs_diff(stepped.amplitudes(), chained.amplitudes()) == 0.0);
    CHECK_THAT(chained.norm(), WithinAbs(1.0, 1e-12));
}
