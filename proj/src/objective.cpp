#include "qpath/objective.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"

namespace qpath {

ConnectivityGraph::ConnectivityGraph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ <= 0) {
        throw StructuralError("ConnectivityGraph: vertex count must be positive");
    }
    for (auto& [i, j] : edges_) {
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= vertex_count_ || i == j) {
            throw StructuralError("ConnectivityGraph: edge (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") out of range");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw StructuralError("ConnectivityGraph: duplicate edge");
    }
}

ObjectiveSpec::ObjectiveSpec(ConnectivityGraph graph, std::vector<EdgeTerm> terms)
    : graph_(std::move(graph)), terms_(std::move(terms)) {
    if (static_cast<int>(terms_.size()) != graph_.edge_count()) {
        throw StructuralError("ObjectiveSpec: one edge term required per edge");
    }
    for (const EdgeTerm& t : terms_) {
        if (!std::isfinite(t.weight)) {
            throw StructuralError("ObjectiveSpec: non-finite edge weight");
        }
    }
}

ObjectiveSpec ObjectiveSpec::uniform(ConnectivityGraph graph, double weight) {
    std::vector<EdgeTerm> terms(static_cast<std::size_t>(graph.edge_count()),
                                EdgeTerm{ClauseKind::Cut, weight});
    return ObjectiveSpec(std::move(graph), std::move(terms));
}

double ObjectiveSpec::clause_value(int edge_index, std::uint64_t z) const {
    const auto& [i, j] = graph_.edge(edge_index);
    const EdgeTerm& t = terms_[static_cast<std::size_t>(edge_index)];
    const bool bi = (z >> static_cast<unsigned>(i)) & 1;
    const bool bj = (z >> static_cast<unsigned>(j)) & 1;
    switch (t.kind) {
    case ClauseKind::Cut:
        return (bi != bj) ? t.weight : 0.0;
    }
    return 0.0;
}

double ObjectiveSpec::value(std::uint64_t z) const {
    double sum = 0.0;
    for (int e = 0; e < edge_count(); ++e) sum += clause_value(e, z);
    return sum;
}

nlohmann::json ObjectiveSpec::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (int e = 0; e < edge_count(); ++e) {
        const auto& [i, j] = graph_.edge(e);
        edges.push_back({i, j, terms_[static_cast<std::size_t>(e)].weight});
    }
    return nlohmann::json{{"schema", 1}, {"vertices", graph_.vertex_count()}, {"edges", edges}};
}

ObjectiveSpec ObjectiveSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        throw ConfigError("graph JSON must contain 'vertices' and 'edges'");
    }
    if (j.contains("schema") && j.at("schema").get<int>() != 1) {
        throw ConfigError("graph JSON: unsupported schema version");
    }
    const int n = j.at("vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    std::vector<EdgeTerm> terms;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) {
            throw ConfigError("graph JSON: each edge must be [i, j] or [i, j, w]");
        }
        const int u = e.at(0).get<int>();
        const int v = e.at(1).get<int>();
        if (u >= v) {
            throw ConfigError("graph JSON: edges must satisfy i < j");
        }
        edges.emplace_back(u, v);
        terms.push_back({ClauseKind::Cut, e.size() == 3 ? e.at(2).get<double>() : 1.0});
    }
    // the format requires lexicographically sorted input; the constructor
    // sorts edges, so sort the weights alongside before handing over
    std::vector<std::size_t> order(edges.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    if (!std::is_sorted(edges.begin(), edges.end())) {
        throw ConfigError("graph JSON: edges must be lexicographically sorted");
    }
    std::vector<EdgeTerm> sorted_terms;
    sorted_terms.reserve(terms.size());
    for (std::size_t k : order) sorted_terms.push_back(terms[k]);
    ConnectivityGraph graph(n, std::move(edges));
    return ObjectiveSpec(std::move(graph), std::move(sorted_terms));
}

double objective_value(const StateVector& state, const ObjectiveSpec& objective) {
    if (objective.qubit_count() != state.qubit_count()) {
        throw StructuralError("objective_value: objective width does not match state");
    }
    const Eigen::VectorXcd& amps = state.amplitudes();
    double sum = 0.0;
    for (std::int64_t z = 0; z < amps.size(); ++z) {
        sum += std::norm(amps[z]) * objective.value(static_cast<std::uint64_t>(z));
    }
    return sum;
}

double objective_estimate(const std::vector<MeasurementSample>& samples,
                          const ObjectiveSpec& objective) {
    double total = 0.0;
    std::int64_t shots = 0;
    for (const MeasurementSample& s : samples) {
        total += static_cast<double>(s.count) * objective.value(s.bitstring);
        shots += s.count;
    }
    if (shots == 0) {
        throw StructuralError("objective_estimate: no samples");
    }
    return total / static_cast<double>(shots);
}

} // namespace qpath
