#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpath/circuit.hpp"
#include "qpath/errors.hpp"
#include "qpath/objective.hpp"

using namespace qpath;
using oracles::Cplx;

namespace {

double max_amp_error(const StateVector& got, const Eigen::VectorXcd& want) {
    return (got.amplitudes() - want).lpNorm<Eigen::Infinity>();
}

} // namespace

TEST_CASE("pauli string basics") {
    const PauliString p = PauliString::parse("XZ");
    CHECK(p.qubit_count() == 2);
    CHECK(p.op(0) == Pauli::X);
    CHECK(p.op(1) == Pauli::Z);
    CHECK(p.to_string() == "XZ");
    CHECK_FALSE(p.is_identity());
    CHECK(PauliString::parse("II").is_identity());
    CHECK_THROWS_AS(PauliString::parse("XQ"), StructuralError);
    CHECK_THROWS_AS(PauliString(std::vector<Pauli>{}), StructuralError);
}

TEST_CASE("pauli strings square to the identity (dense check, up to 3 qubits)") {
    SeededRng rng(31);
    for (int qubits = 1; qubits <= 3; ++qubits) {
        for (int trial = 0; trial < 8; ++trial) {
            const PauliString p = oracles::random_pauli(rng, qubits);
            const Eigen::MatrixXcd dense = oracles::pauli_dense(p);
            const Eigen::MatrixXcd ident =
                Eigen::MatrixXcd::Identity(dense.rows(), dense.cols());
            CHECK((dense * dense - ident).lpNorm<Eigen::Infinity>() <= 1e-12);
        }
    }
}

TEST_CASE("apply_pauli matches the dense matrix") {
    SeededRng rng(32);
    for (int qubits = 1; qubits <= 3; ++qubits) {
        const PauliString p = oracles::random_pauli(rng, qubits);
        const StateVector state = oracles::random_state(rng, qubits);
        const StateVector got = apply_pauli(state, p);
        const Eigen::VectorXcd want = oracles::pauli_dense(p) * state.amplitudes();
        CHECK(max_amp_error(got, want) <= 1e-12);
    }
}

TEST_CASE("rotation on a Z eigenstate is a pure phase") {
    const StateVector in = StateVector::zero_state(1);
    const StateVector out = apply_pauli_rotation(in, PauliString::parse("Z"), M_PI / 2);
    // e^{-i pi/2}|0> = -i|0>
    CHECK(std::abs(out.amplitudes()[0] - Cplx(0, -1)) <= 1e-12);
    CHECK(std::abs(out.amplitudes()[1]) <= 1e-12);
}

TEST_CASE("X rotation by pi/2 flips |0> to -i|1>") {
    const StateVector in = StateVector::zero_state(1);
    const StateVector out = apply_pauli_rotation(in, PauliString::parse("X"), M_PI / 2);
    CHECK(std::abs(out.amplitudes()[0]) <= 1e-12);
    CHECK(std::abs(out.amplitudes()[1] - Cplx(0, -1)) <= 1e-12);
}

TEST_CASE("zero angle is the identity") {
    SeededRng rng(33);
    const StateVector state = oracles::random_state(rng, 2);
    const StateVector out = apply_pauli_rotation(state, PauliString::parse("XZ"), 0.0);
    CHECK(max_amp_error(out, state.amplitudes()) == 0.0);
}

TEST_CASE("rotation matches the dense matrix exponential") {
    SeededRng rng(34);
    const StateVector state = oracles::random_state(rng, 2);
    const PauliString p = PauliString::parse("XZ");
    const StateVector got = apply_pauli_rotation(state, p, 0.7);
    const Eigen::VectorXcd want = oracles::rotation_dense(p, 0.7) * state.amplitudes();
    CHECK(max_amp_error(got, want) <= 1e-10);
}

TEST_CASE("build_state: empty sequence returns the input") {
    const GateSequence seq(2, {}, 0);
    const StateVector out = build_state(seq, Eigen::VectorXd(0));
    CHECK(std::abs(out.amplitudes()[0] - 1.0) <= 1e-15);
}

TEST_CASE("build_state: single Z rotation by pi") {
    GateSequence seq(1, {{PauliString::parse("Z"), 0}}, 1);
    Eigen::VectorXd theta(1);
    theta << M_PI;
    const StateVector out = build_state(seq, theta);
    CHECK(std::abs(out.amplitudes()[0] - Cplx(-1, 0)) <= 1e-12);
}

TEST_CASE("build_state matches dense right-to-left products") {
    SeededRng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const GateSequence seq = oracles::random_sequence(rng, 2, 3);
        const Eigen::VectorXd theta = oracles::random_vector(rng, 3, -3.0, 3.0);
        const StateVector input = oracles::random_state(rng, 2);
        const StateVector got = build_state(seq, theta, input);
        const Eigen::VectorXcd want =
            oracles::simulate_dense(seq, theta, input.amplitudes());
        CHECK(max_amp_error(got, want) <= 1e-10);
    }
}

TEST_CASE("build_state rejects mismatched inputs") {
    const GateSequence seq(2, {{PauliString::parse("ZZ"), 0}}, 1);
    CHECK_THROWS_AS(build_state(seq, Eigen::VectorXd::Zero(2)), StructuralError);
    CHECK_THROWS_AS(build_state(seq, Eigen::VectorXd::Zero(1), StateVector::zero_state(3)),
                    StructuralError);
    CHECK_THROWS_AS(GateSequence(2, {{PauliString::parse("ZZ"), 1}}, 1), StructuralError);
    CHECK_THROWS_AS(GateSequence(2, {{PauliString::parse("Z"), 0}}, 1), StructuralError);
    Eigen::VectorXd nan_theta(1);
    nan_theta << std::nan("");
    CHECK_THROWS_AS(build_state(seq, nan_theta), StructuralError);
}

TEST_CASE("state vector enforces normalization") {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[0] = 2.0;
    CHECK_THROWS_AS(StateVector(2, std::move(amps)), StructuralError);
    Eigen::VectorXcd wrong_len = Eigen::VectorXcd::Zero(3);
    CHECK_THROWS_AS(StateVector(2, std::move(wrong_len)), StructuralError);
}

TEST_CASE("norm preservation over random circuits") {
    SeededRng rng(36);
    for (int trial = 0; trial < 60; ++trial) {
        const int qubits = 1 + static_cast<int>(rng.below(10));
        const int gates = 1 + static_cast<int>(rng.below(20));
        const GateSequence seq = oracles::random_sequence(rng, qubits, gates);
        const StateVector out =
            build_state(seq, oracles::random_vector(rng, gates, -3.0, 3.0));
        CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
    }
}

TEST_CASE("rotation composition and inverse") {
    SeededRng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const int qubits = 1 + static_cast<int>(rng.below(3));
        const PauliString p = oracles::random_pauli(rng, qubits);
        const StateVector state = oracles::random_state(rng, qubits);
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-3.0, 3.0);
        const StateVector two_step =
            apply_pauli_rotation(apply_pauli_rotation(state, p, a), p, b);
        const StateVector one_step = apply_pauli_rotation(state, p, a + b);
        CHECK(max_amp_error(two_step, one_step.amplitudes()) <= 1e-10);
        const StateVector round =
            apply_pauli_rotation(apply_pauli_rotation(state, p, a), p, -a);
        CHECK(max_amp_error(round, state.amplitudes()) <= 1e-10);
    }
}

TEST_CASE("objective expectation on basis and superposition states") {
    const ObjectiveSpec cut = ObjectiveSpec::uniform(ConnectivityGraph(2, {{0, 1}}));
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[1] = 1.0; // |01>: bit0=1, bit1=0 -> cut
    CHECK(objective_value(StateVector(2, amps), cut) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(objective_value(StateVector::zero_state(2), cut) ==
          doctest::Approx(0.0).epsilon(1e-12));
    Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(4, 0.5);
    CHECK(objective_value(StateVector(2, uniform), cut) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(objective_value(StateVector::zero_state(3), cut), StructuralError);
}

TEST_CASE("objective expectation stays within the spectrum bounds") {
    SeededRng rng(38);
    const ObjectiveSpec obj =
        ObjectiveSpec::uniform(ConnectivityGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
    double cmin = 1e300, cmax = -1e300;
    for (std::uint64_t z = 0; z < 8; ++z) {
        cmin = std::min(cmin, obj.value(z));
        cmax = std::max(cmax, obj.value(z));
    }
    for (int trial = 0; trial < 25; ++trial) {
        const double f = objective_value(oracles::random_state(rng, 3), obj);
        CHECK(f >= cmin - 1e-12);
        CHECK(f <= cmax + 1e-12);
    }
}

TEST_CASE("measurement of a deterministic state") {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2);
    amps[1] = 1.0;
    const auto samples = measure(StateVector(1, amps), 100, 5);
    REQUIRE(samples.size() == 1);
    CHECK(samples[0].bitstring == 1);
    CHECK(samples[0].count == 100);
}

TEST_CASE("measurement frequencies concentrate on the distribution") {
    // binomial: 5 sigma at p=0.5, n=1e5 is ~0.0079 < 0.01
    Eigen::VectorXcd amps = Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0));
    const auto samples = measure(StateVector(1, amps), 100000, 7);
    std::int64_t total = 0;
    for (const auto& s : samples) total += s.count;
    CHECK(total == 100000);
    for (const auto& s : samples) {
        CHECK(std::abs(static_cast<double>(s.count) / 100000.0 - 0.5) <= 0.01);
    }
}

TEST_CASE("measurement is deterministic under a fixed seed") {
    SeededRng rng(39);
    const StateVector state = oracles::random_state(rng, 3);
    const auto a = measure(state, 1000, 42);
    const auto b = measure(state, 1000, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].bitstring == b[i].bitstring);
        CHECK(a[i].count == b[i].count);
    }
    CHECK_THROWS_AS(measure(state, 0, 1), StructuralError);
}

TEST_CASE("shot-based estimate converges to the exact expectation") {
    SeededRng rng(40);
    const ObjectiveSpec obj = ObjectiveSpec::uniform(ConnectivityGraph(2, {{0, 1}}));
    const StateVector state = oracles::random_state(rng, 2);
    const double exact = objective_value(state, obj);
    const double estimate = objective_estimate(measure(state, 200000, 3), obj);
    CHECK(std::abs(estimate - exact) <= 0.02);
}
