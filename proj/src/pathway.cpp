#include "qpath/pathway.hpp"

#include <cmath>
#include <set>
#include <string>

#include "qpath/errors.hpp"

namespace qpath {

Eigen::VectorXd PathwayElement::concatenated() const {
    Eigen::VectorXd out(kappa.size() + omega.size());
    out << kappa, omega;
    return out;
}

PathwayElement PathwayElement::from_concatenated(const Eigen::VectorXd& v) {
    if (v.size() % 2 != 0 || v.size() == 0) {
        throw StructuralError("PathwayElement: concatenated vector must have even length");
    }
    const Eigen::Index s = v.size() / 2;
    return PathwayElement{v.head(s), v.tail(s)};
}

Eigen::VectorXd decompose_objective(const StateVector& state, const ObjectiveSpec& objective) {
    if (objective.qubit_count() != state.qubit_count()) {
        throw StructuralError("decompose_objective: objective width does not match state");
    }
    const Eigen::VectorXcd& amps = state.amplitudes();
    Eigen::VectorXd omega = Eigen::VectorXd::Zero(objective.edge_count());
    for (std::int64_t z = 0; z < amps.size(); ++z) {
        const double p = std::norm(amps[z]);
        if (p == 0.0) continue;
        for (int e = 0; e < objective.edge_count(); ++e) {
            omega[e] += p * objective.clause_value(e, static_cast<std::uint64_t>(z));
        }
    }
    return omega;
}

PathwayElement encode_element(const ConnectivityGraph& graph, const Eigen::VectorXd& omega) {
    if (omega.size() != graph.edge_count()) {
        throw StructuralError("encode_element: omega length " + std::to_string(omega.size()) +
                              " != edge count " + std::to_string(graph.edge_count()));
    }
    Eigen::VectorXd kappa(graph.edge_count());
    for (int e = 0; e < graph.edge_count(); ++e) kappa[e] = static_cast<double>(e);
    return PathwayElement{std::move(kappa), omega};
}

DecodeReport decode_element(const PathwayElement& element) {
    if (element.kappa.size() != element.omega.size() || element.kappa.size() == 0) {
        throw StructuralError("decode_element: malformed pathway element");
    }
    const int edge_count = static_cast<int>(element.kappa.size());
    DecodeReport report;
    report.omega = element.omega;
    report.total = element.omega.sum();
    std::set<int> seen;
    for (int e = 0; e < edge_count; ++e) {
        const double raw = element.kappa[e];
        const double rounded = std::round(raw);
        const double deviation = std::abs(raw - rounded);
        report.max_deviation = std::max(report.max_deviation, deviation);
        if (deviation > 0.25) report.flagged.push_back(e);
        const int index = static_cast<int>(rounded);
        if (rounded < 0.0 || index >= edge_count) {
            throw StructuralError("decode_element: coordinate " + std::to_string(raw) +
                                  " rounds to invalid edge index " + std::to_string(index));
        }
        if (!seen.insert(index).second) {
            throw StructuralError("decode_element: rounded edge indices collide at " +
                                  std::to_string(index));
        }
        report.edge_indices.push_back(index);
    }
    return report;
}

} // namespace qpath
