#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qpath/circuit.hpp"

namespace qpath {

/// Fixed connectivity graph G = (V, S). Edges are stored with i < j in
/// lexicographic order; that order is the canonical edge indexing used by
/// every per-edge quantity in the library.
class ConnectivityGraph {
public:
    ConnectivityGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::pair<int, int>& edge(int index) const {
        return edges_[static_cast<std::size_t>(index)];
    }

private:
    int vertex_count_;
    std::vector<std::pair<int, int>> edges_;
};

enum class ClauseKind { Cut };

/// Per-edge clause C_{s_ij}(z). The reference kind is the weighted cut clause
/// w * [bit_i(z) != bit_j(z)].
struct EdgeTerm {
    ClauseKind kind = ClauseKind::Cut;
    double weight = 1.0;
};

/// Classical objective C(z) decomposed over the edges of a connectivity
/// graph: C(z) = sum over edges of C_{s_ij}(z).
class ObjectiveSpec {
public:
    ObjectiveSpec(ConnectivityGraph graph, std::vector<EdgeTerm> terms);

    /// All edges share one clause kind and weight.
    static ObjectiveSpec uniform(ConnectivityGraph graph, double weight = 1.0);

    const ConnectivityGraph& graph() const { return graph_; }
    int qubit_count() const { return graph_.vertex_count(); }
    int edge_count() const { return graph_.edge_count(); }
    const std::vector<EdgeTerm>& terms() const { return terms_; }

    /// Value of the clause on edge `edge_index` for bitstring z.
    double clause_value(int edge_index, std::uint64_t z) const;

    /// C(z), the sum of all per-edge clauses.
    double value(std::uint64_t z) const;

    /// JSON object {schema, vertices, edges: [[i, j, w], ...]} with edges in
    /// canonical order. The serialized edge order is part of the contract.
    nlohmann::json to_json() const;
    static ObjectiveSpec from_json(const nlohmann::json& j);

private:
    ConnectivityGraph graph_;
    std::vector<EdgeTerm> terms_;
};

/// Exact expectation sum_z |amplitude(z)|^2 C(z) of the diagonal operator C.
double objective_value(const StateVector& state, const ObjectiveSpec& objective);

/// Empirical mean of C(z) over measurement samples (opt-in shot-based mode).
double objective_estimate(const std::vector<MeasurementSample>& samples,
                          const ObjectiveSpec& objective);

} // namespace qpath
