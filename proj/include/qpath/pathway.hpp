#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpath/objective.hpp"

namespace qpath {

/// Input-space element pairing edge coordinates with per-edge objective
/// values. kappa holds the canonical edge indices as real coordinates; omega
/// holds the per-edge objective values, in the same order.
struct PathwayElement {
    Eigen::VectorXd kappa;
    Eigen::VectorXd omega;

    /// Concatenated (kappa || omega) vector of length 2|S|, the point handed
    /// to the kernel machinery.
    Eigen::VectorXd concatenated() const;

    /// Splits a 2|S| vector back into (kappa, omega).
    static PathwayElement from_concatenated(const Eigen::VectorXd& v);

    /// Total pathway value, sum of omega.
    double total() const { return omega.sum(); }
};

/// Per-edge expectations Omega_e = sum_z |amp(z)|^2 C_{s_e}(z), canonical
/// edge order. Sums to objective_value(state, objective).
Eigen::VectorXd decompose_objective(const StateVector& state, const ObjectiveSpec& objective);

/// Builds the input-space element for a per-edge value vector.
PathwayElement encode_element(const ConnectivityGraph& graph, const Eigen::VectorXd& omega);

/// Result of decoding a pathway element back to edges and values.
struct DecodeReport {
    std::vector<int> edge_indices;  ///< kappa*, rounded to canonical indices
    Eigen::VectorXd omega;          ///< omega*, returned as-is
    double total = 0.0;             ///< C* = sum omega*
    std::vector<int> flagged;       ///< positions whose pre-rounding deviation > 0.25
    double max_deviation = 0.0;     ///< largest |kappa_i - round(kappa_i)|
};

/// Rounds kappa entries to the nearest canonical edge index. Throws
/// StructuralError when rounded indices collide or fall outside [0, |S|).
/// Entries that had to move by more than 0.25 are flagged in the report; the
/// flag threshold makes the ill-posedness of the real-coordinate encoding
/// observable instead of silent.
DecodeReport decode_element(const PathwayElement& element);

} // namespace qpath
