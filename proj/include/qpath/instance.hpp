#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qpath/circuit.hpp"
#include "qpath/objective.hpp"

namespace qpath {

enum class InstanceKind { MaxcutRing, MaxcutRandom };

std::string instance_kind_name(InstanceKind k);
InstanceKind instance_kind_from_name(const std::string& name);

/// A problem instance: graph, objective, and the ansatz circuit.
struct Instance {
    ConnectivityGraph graph;
    ObjectiveSpec objective;
    GateSequence circuit;
    InstanceKind kind = InstanceKind::MaxcutRing;
    int size = 0;
    std::uint64_t seed = 0;
    int layers = 1;
    bool per_gate_parameters = true;

    nlohmann::json to_json() const;
};

/// Builds a MaxCut instance with an alternating-layer ansatz. Each layer is
/// one Z(i)Z(j) rotation per edge (canonical edge order) followed by one X
/// rotation per qubit; with per-gate parameters L = layers * (|S| + n).
///
///  - maxcut-ring: n vertices in a cycle, unit weights (size 2 degenerates to
///    a single edge).
///  - maxcut-random: Erdos-Renyi with edge probability 0.5; an empty draw is
///    reseeded until at least one edge exists.
/// size must lie in [2, 14].
Instance generate_instance(InstanceKind kind, int size, std::uint64_t seed, int layers = 1,
                           bool per_gate_parameters = true);

/// Rebuilds the ansatz circuit for an existing graph (used when the graph
/// comes from a file instead of a generator).
GateSequence build_ansatz(const ConnectivityGraph& graph, int layers, bool per_gate_parameters);

} // namespace qpath
