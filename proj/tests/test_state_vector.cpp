#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qnest/state_vector.hpp"
#include "oracles.hpp"

using namespace qnest;
using Catch::Matchers::WithinAbs;

namespace {
const double r2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("basis_state builds unit coordinate vectors", "[statevec]") {
    CHECK(StateVector::basis_state(1, 0).amplitudes() == std::vector<double>{1, 0});
    CHECK(StateVector::basis_state(1, 1).amplitudes() == std::vector<double>{0, 1});

    const StateVector e6 = StateVector::basis_state(3, 6);
    REQUIRE(e6.dimension() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(e6[i] == (i == 6 ? 1.0 : 0.0));

    CHECK_THROWS_AS(StateVector::basis_state(2, 4), ValidationError);
    CHECK_THROWS_AS(StateVector::basis_state(0, 0), ValidationError);
}

TEST_CASE("from_amplitudes validates shape and norm", "[statevec]") {
    const StateVector bell = StateVector::from_amplitudes({r2, 0, 0, r2});
    CHECK(bell.num_qubits() == 2);

    const StateVector renorm = StateVector::from_amplitudes({1, 1}, true);
    CHECK_THAT(renorm[0], WithinAbs(r2, 1e-15));
    CHECK_THAT(renorm[1], WithinAbs(r2, 1e-15));

    CHECK_THROWS_AS(StateVector::from_amplitudes({1, 0, 0}), ValidationError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({1}), ValidationError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({0, 0, 0, 0}, true), ValidationError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({0.5, 0.5}), ValidationError);
}

TEST_CASE("qubit amplitudes must be unit", "[statevec]") {
    CHECK_NOTHROW(Qubit(0.6, 0.8));
    CHECK_NOTHROW(Qubit(1.0, 0.0));
    CHECK_THROWS_AS(Qubit(0.7, 0.8), ValidationError);
}

TEST_CASE("tensor puts the first factor on the high-order bits", "[statevec]") {
    const StateVector q = Qubit(0.6, 0.8).as_state();
    const StateVector zero = StateVector::basis_state(1, 0);

    CHECK(tensor(q, zero).amplitudes() == std::vector<double>{0.6, 0.0, 0.8, 0.0});
    CHECK(tensor(zero, zero).amplitudes() == std::vector<double>{1, 0, 0, 0});

    const StateVector qq = tensor(q, q);
    CHECK_THAT(qq[0], WithinAbs(0.36, 1e-15));
    CHECK_THAT(qq[1], WithinAbs(0.48, 1e-15));
    CHECK_THAT(qq[2], WithinAbs(0.48, 1e-15));
    CHECK_THAT(qq[3], WithinAbs(0.64, 1e-15));
}

TEST_CASE("tensor with |0> is exact and norm-preserving for random qubits", "[statevec]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979);
    const StateVector zero = StateVector::basis_state(1, 0);
    for (int i = 0; i < 200; ++i) {
        const double t = angle(rng);
        const Qubit q(std::cos(t), std::sin(t));
        const StateVector prod = tensor(q.as_state(), zero);
        // exact placement, no arithmetic error allowed
        CHECK(prod.amplitudes() == std::vector<double>{q.a(), 0.0, q.b(), 0.0});
        CHECK_THAT(prod.norm(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("inner products", "[statevec]") {
    const StateVector bell = StateVector::from_amplitudes({r2, 0, 0, r2});
    const StateVector uniform = StateVector::from_amplitudes({0.5, 0.5, 0.5, 0.5});
    CHECK_THAT(inner(bell, uniform), WithinAbs(r2, 1e-15));
    CHECK_THAT(inner(bell, bell), WithinAbs(1.0, 1e-15));
    CHECK_THAT(inner(StateVector::basis_state(1, 0), StateVector::basis_state(1, 1)),
               WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(inner(bell, StateVector::basis_state(1, 0)), ValidationError);
}

TEST_CASE("project splits the doubled state by the first qubit", "[statevec]") {
    const StateVector doubled = StateVector::from_amplitudes({0.36, 0.48, 0.48, 0.64});
    const Projection p0 = project(doubled, 1, 0);
    CHECK_THAT(p0.probability, WithinAbs(0.36, 1e-12));
    REQUIRE(p0.post_state.has_value());
    CHECK_THAT((*p0.post_state)[0], WithinAbs(0.6, 1e-12));
    CHECK_THAT((*p0.post_state)[1], WithinAbs(0.8, 1e-12));
    CHECK((*p0.post_state)[2] == 0.0);
    CHECK((*p0.post_state)[3] == 0.0);
}

TEST_CASE("project on the nested 3-qubit state", "[statevec]") {
    const double a = 0.6, b = 0.8;
    const StateVector xi =
        StateVector::from_amplitudes({a * r2, 0, b * r2, 0, a * r2, 0, b * r2, 0});
    const Projection p = project(xi, 1, 0);
    CHECK_THAT(p.probability, WithinAbs(0.5, 1e-12));
    REQUIRE(p.post_state.has_value());
    CHECK_THAT((*p.post_state)[0], WithinAbs(a, 1e-12));
    CHECK_THAT((*p.post_state)[2], WithinAbs(b, 1e-12));
    for (std::size_t i = 4; i < 8; ++i) CHECK((*p.post_state)[i] == 0.0);
}

TEST_CASE("projecting onto an orthogonal outcome returns no state", "[statevec]") {
    const Projection p = project(StateVector::basis_state(1, 0), 1, 1);
    CHECK(p.probability == 0.0);
    CHECK_FALSE(p.post_state.has_value());

    CHECK_THROWS_AS(project(StateVector::basis_state(1, 0), 2, 0), ValidationError);
    CHECK_THROWS_AS(project(StateVector::basis_state(1, 0), 1, 2), ValidationError);
}

TEST_CASE("projection completeness and collapse idempotence", "[statevec][property]") {
    std::mt19937_64 rng(42);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            const StateVector s =
                StateVector::from_amplitudes(oracle::random_unit(std::size_t{1} << n, rng));
            for (int k = 1; k <= n; ++k) {
                const Projection p0 = project(s, k, 0);
                const Projection p1 = project(s, k, 1);
                CHECK_THAT(p0.probability + p1.probability, WithinAbs(1.0, 1e-12));
                if (p0.post_state) {
                    CHECK_THAT(project(*p0.post_state, k, 0).probability, WithinAbs(1.0, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("measure draws outcomes with the projector weights", "[statevec]") {
    ShotRng rng(7);
    const MeasurementRecord sure = measure(StateVector::basis_state(1, 0), 1, rng);
    CHECK(sure.outcome == 0);
    CHECK(sure.probability == 1.0);

    const StateVector xi = StateVector::from_amplitudes(
        {0.6 * r2, 0, 0.8 * r2, 0, 0.6 * r2, 0, 0.8 * r2, 0});
    const MeasurementRecord r = measure(xi, 1, rng);
    CHECK((r.outcome == 0 || r.outcome == 1));
    CHECK_THAT(r.probability, WithinAbs(0.5, 1e-12));
    CHECK_THAT(r.post_state.norm(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("measurement frequency over 10000 seeded draws", "[statevec][property]") {
    const StateVector xi = StateVector::from_amplitudes(
        {0.6 * r2, 0, 0.8 * r2, 0, 0.6 * r2, 0, 0.8 * r2, 0});
    ShotRng rng(20240817);
    int zeros = 0;
    for (int i = 0; i < 10000; ++i) {
        if (measure(xi, 1, rng).outcome == 0) ++zeros;
    }
    const double freq = zeros / 10000.0;
    CHECK(freq >= 0.485);
    CHECK(freq <= 0.515);
}

TEST_CASE("measurement sequences are seed-deterministic", "[statevec]") {
    const StateVector xi = StateVector::from_amplitudes(
        {0.6 * r2, 0, 0.8 * r2, 0, 0.6 * r2, 0, 0.8 * r2, 0});
    ShotRng first(99), second(99);
    for (int i = 0; i < 64; ++i) {
        CHECK(measure(xi, 1, first).outcome == measure(xi, 1, second).outcome);
    }
}
