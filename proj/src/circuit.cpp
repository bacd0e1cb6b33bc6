#include "qpath/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qpath/errors.hpp"
#include "qpath/rng.hpp"

namespace qpath {

namespace {

constexpr double kNormTolerance = 1e-10;

void check_theta(const Eigen::VectorXd& theta, int expected) {
    if (theta.size() != expected) {
        throw StructuralError("parameter vector length " + std::to_string(theta.size()) +
                              " does not match gate sequence parameter count " +
                              std::to_string(expected));
    }
    if (!theta.allFinite()) {
        throw StructuralError("parameter vector contains non-finite entries");
    }
}

} // namespace

GateSequence::GateSequence(int qubit_count, std::vector<GateSpec> gates, int parameter_count)
    : qubit_count_(qubit_count), parameter_count_(parameter_count), gates_(std::move(gates)) {
    if (qubit_count_ <= 0) {
        throw StructuralError("GateSequence: qubit count must be positive");
    }
    if (parameter_count_ < 0) {
        throw StructuralError("GateSequence: negative parameter count");
    }
    for (const GateSpec& g : gates_) {
        if (g.generator.qubit_count() != qubit_count_) {
            throw StructuralError("GateSequence: generator width " +
                                  std::to_string(g.generator.qubit_count()) +
                                  " does not match qubit count " + std::to_string(qubit_count_));
        }
        if (g.parameter_index < 0 || g.parameter_index >= parameter_count_) {
            throw StructuralError("GateSequence: parameter index " +
                                  std::to_string(g.parameter_index) + " outside [0, " +
                                  std::to_string(parameter_count_) + ")");
        }
    }
}

StateVector::StateVector(int qubit_count, Eigen::VectorXcd amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
    if (qubit_count_ <= 0 || qubit_count_ > 30) {
        throw StructuralError("StateVector: qubit count out of range");
    }
    const std::int64_t dim = std::int64_t{1} << qubit_count_;
    if (amplitudes_.size() != dim) {
        throw StructuralError("StateVector: amplitude vector length " +
                              std::to_string(amplitudes_.size()) + " != 2^" +
                              std::to_string(qubit_count_));
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
        throw StructuralError("StateVector: norm deviates from 1 beyond 1e-10");
    }
}

StateVector StateVector::zero_state(int qubit_count) {
    if (qubit_count <= 0 || qubit_count > 30) {
        throw StructuralError("StateVector: qubit count out of range");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::int64_t{1} << qubit_count);
    amps[0] = 1.0;
    return StateVector(qubit_count, std::move(amps));
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
    if (p.qubit_count() != state.qubit_count()) {
        throw StructuralError("apply_pauli: operator width does not match state");
    }
    const Eigen::VectorXcd& in = state.amplitudes();
    Eigen::VectorXcd out(in.size());
    const std::uint64_t flip = p.flip_mask();
    for (std::int64_t z = 0; z < in.size(); ++z) {
        const auto uz = static_cast<std::uint64_t>(z);
        out[static_cast<std::int64_t>(uz ^ flip)] = p.basis_phase(uz) * in[z];
    }
    return StateVector(state.qubit_count(), std::move(out));
}

StateVector apply_pauli_rotation(const StateVector& state, const PauliString& p, double angle) {
    if (p.qubit_count() != state.qubit_count()) {
        throw StructuralError("apply_pauli_rotation: operator width does not match state");
    }
    // exp(-i a P) = cos(a) I - i sin(a) P, exact because P^2 = I.
    const std::complex<double> c{std::cos(angle), 0.0};
    const std::complex<double> mis{0.0, -std::sin(angle)};
    const Eigen::VectorXcd& in = state.amplitudes();
    Eigen::VectorXcd out = c * in;
    const std::uint64_t flip = p.flip_mask();
    for (std::int64_t z = 0; z < in.size(); ++z) {
        const auto uz = static_cast<std::uint64_t>(z);
        out[static_cast<std::int64_t>(uz ^ flip)] += mis * p.basis_phase(uz) * in[z];
    }
    return StateVector(state.qubit_count(), std::move(out));
}

StateVector build_state(const GateSequence& seq, const Eigen::VectorXd& theta,
                        const StateVector& input) {
    if (input.qubit_count() != seq.qubit_count()) {
        throw StructuralError("build_state: input state width does not match sequence");
    }
    check_theta(theta, seq.parameter_count());
    StateVector state = input;
    for (const GateSpec& g : seq.gates()) {
        state = apply_pauli_rotation(state, g.generator, theta[g.parameter_index]);
    }
    return state;
}

StateVector build_state(const GateSequence& seq, const Eigen::VectorXd& theta) {
    return build_state(seq, theta, StateVector::zero_state(seq.qubit_count()));
}

std::vector<MeasurementSample> measure(const StateVector& state, std::int64_t shots,
                                       std::uint64_t seed) {
    if (shots < 1) {
        throw StructuralError("measure: shots must be >= 1");
    }
    const Eigen::VectorXcd& amps = state.amplitudes();
    // cumulative distribution over basis states
    std::vector<double> cdf(static_cast<std::size_t>(amps.size()));
    double acc = 0.0;
    for (std::int64_t z = 0; z < amps.size(); ++z) {
        acc += std::norm(amps[z]);
        cdf[static_cast<std::size_t>(z)] = acc;
    }
    cdf.back() = 1.0; // guard against rounding at the top

    SeededRng rng(seed);
    std::map<std::uint64_t, std::int64_t> counts;
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto z = static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        ++counts[z];
    }
    std::vector<MeasurementSample> out;
    out.reserve(counts.size());
    for (const auto& [z, c] : counts) out.push_back({z, c});
    return out;
}

} // namespace qpath
