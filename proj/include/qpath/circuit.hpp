#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qpath/pauli.hpp"

namespace qpath {

/// One parameterized gate exp(-i * theta[parameter_index] * generator).
struct GateSpec {
    PauliString generator;
    int parameter_index = 0;
};

/// Ordered gate list; gates are applied first-to-last to the input state.
class GateSequence {
public:
    GateSequence(int qubit_count, std::vector<GateSpec> gates, int parameter_count);

    int qubit_count() const { return qubit_count_; }
    int parameter_count() const { return parameter_count_; }
    int gate_count() const { return static_cast<int>(gates_.size()); }
    const std::vector<GateSpec>& gates() const { return gates_; }

private:
    int qubit_count_;
    int parameter_count_;
    std::vector<GateSpec> gates_;
};

/// Complex amplitude vector over the 2^n computational basis states.
/// Invariant: unit Euclidean norm within 1e-10.
class StateVector {
public:
    StateVector(int qubit_count, Eigen::VectorXcd amplitudes);

    static StateVector zero_state(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    std::int64_t dimension() const { return amplitudes_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

private:
    int qubit_count_;
    Eigen::VectorXcd amplitudes_;
};

/// P|psi> for a Pauli string P.
StateVector apply_pauli(const StateVector& state, const PauliString& p);

/// exp(-i*angle*P)|psi> = cos(angle)|psi> - i*sin(angle)(P|psi>).
StateVector apply_pauli_rotation(const StateVector& state, const PauliString& p, double angle);

/// Applies the whole sequence: U_L(theta_L) ... U_1(theta_1) |input>.
StateVector build_state(const GateSequence& seq, const Eigen::VectorXd& theta,
                        const StateVector& input);

/// Same, starting from |0...0>.
StateVector build_state(const GateSequence& seq, const Eigen::VectorXd& theta);

/// Aggregated counts for one measured bitstring.
struct MeasurementSample {
    std::uint64_t bitstring = 0;
    std::int64_t count = 0;
};

/// Samples `shots` bitstrings from |amplitude(z)|^2 with a deterministic
/// seeded generator. Returns counts grouped by bitstring, ascending by z;
/// counts sum to `shots`.
std::vector<MeasurementSample> measure(const StateVector& state, std::int64_t shots,
                                       std::uint64_t seed);

} // namespace qpath
