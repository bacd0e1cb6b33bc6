#include "qpath/instance.hpp"

#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"
#include "qpath/rng.hpp"

namespace qpath {

std::string instance_kind_name(InstanceKind k) {
    switch (k) {
    case InstanceKind::MaxcutRing: return "maxcut-ring";
    case InstanceKind::MaxcutRandom: return "maxcut-random";
    }
    return "?";
}

InstanceKind instance_kind_from_name(const std::string& name) {
    if (name == "maxcut-ring") return InstanceKind::MaxcutRing;
    if (name == "maxcut-random") return InstanceKind::MaxcutRandom;
    throw ConfigError("unknown instance kind '" + name + "'");
}

nlohmann::json Instance::to_json() const {
    return nlohmann::json{{"schema", 1},
                          {"kind", instance_kind_name(kind)},
                          {"size", size},
                          {"seed", seed},
                          {"graph", objective.to_json()},
                          {"circuit",
                           {{"layers", layers},
                            {"per_gate_parameters", per_gate_parameters},
                            {"gate_count", circuit.gate_count()},
                            {"parameter_count", circuit.parameter_count()}}}};
}

GateSequence build_ansatz(const ConnectivityGraph& graph, int layers, bool per_gate_parameters) {
    if (layers < 1) {
        throw ConfigError("build_ansatz: layers must be >= 1");
    }
    const int n = graph.vertex_count();
    std::vector<GateSpec> gates;
    gates.reserve(static_cast<std::size_t>(layers) *
                  static_cast<std::size_t>(graph.edge_count() + n));
    int next_param = 0;
    for (int layer = 0; layer < layers; ++layer) {
        const int zz_param = next_param; // shared mode: one angle per layer stage
        for (int e = 0; e < graph.edge_count(); ++e) {
            const auto& [i, j] = graph.edge(e);
            std::vector<Pauli> ops(static_cast<std::size_t>(n), Pauli::I);
            ops[static_cast<std::size_t>(i)] = Pauli::Z;
            ops[static_cast<std::size_t>(j)] = Pauli::Z;
            gates.push_back({PauliString(std::move(ops)),
                             per_gate_parameters ? next_param++ : zz_param});
        }
        if (!per_gate_parameters) next_param = zz_param + 1;
        const int x_param = next_param;
        for (int q = 0; q < n; ++q) {
            std::vector<Pauli> ops(static_cast<std::size_t>(n), Pauli::I);
            ops[static_cast<std::size_t>(q)] = Pauli::X;
            gates.push_back({PauliString(std::move(ops)),
                             per_gate_parameters ? next_param++ : x_param});
        }
        if (!per_gate_parameters) next_param = x_param + 1;
    }
    return GateSequence(n, std::move(gates), next_param);
}

Instance generate_instance(InstanceKind kind, int size, std::uint64_t seed, int layers,
                           bool per_gate_parameters) {
    if (size < 2 || size > 14) {
        throw ConfigError("generate_instance: size must lie in [2, 14]");
    }
    std::vector<std::pair<int, int>> edges;
    switch (kind) {
    case InstanceKind::MaxcutRing:
        if (size == 2) {
            edges.emplace_back(0, 1);
        } else {
            for (int i = 0; i < size; ++i) {
                edges.emplace_back(i, (i + 1) % size);
            }
        }
        break;
    case InstanceKind::MaxcutRandom: {
        std::uint64_t attempt_seed = seed;
        while (edges.empty()) {
            SeededRng rng(attempt_seed);
            for (int i = 0; i < size; ++i) {
                for (int j = i + 1; j < size; ++j) {
                    if (rng.uniform() < 0.5) edges.emplace_back(i, j);
                }
            }
            ++attempt_seed; // reseed until at least one edge exists
        }
        break;
    }
    }
    ConnectivityGraph graph(size, std::move(edges));
    ObjectiveSpec objective = ObjectiveSpec::uniform(graph);
    GateSequence circuit = build_ansatz(graph, layers, per_gate_parameters);
    return Instance{std::move(graph), std::move(objective), std::move(circuit),
                    kind,  size,      seed,
                    layers, per_gate_parameters};
}

} // namespace qpath
