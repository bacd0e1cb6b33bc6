#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"
#include "qpath/harness.hpp"
#include "qpath/report.hpp"
#include "qpath/validate.hpp"

namespace py = pybind11;
using namespace qpath;

namespace {

GateSequence make_sequence(int qubit_count, const std::vector<std::pair<std::string, int>>& gates,
                           int parameter_count) {
    std::vector<GateSpec> specs;
    specs.reserve(gates.size());
    for (const auto& [text, index] : gates) {
        specs.push_back({PauliString::parse(text), index});
    }
    return GateSequence(qubit_count, std::move(specs), parameter_count);
}

ObjectiveSpec make_objective(int vertices,
                             const std::vector<std::tuple<int, int, double>>& edges) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<EdgeTerm> terms;
    for (const auto& [i, j, w] : edges) {
        pairs.emplace_back(i, j);
        terms.push_back({ClauseKind::Cut, w});
    }
    // the graph constructor sorts; sort terms alongside the edge keys
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });
    std::vector<std::pair<int, int>> sorted_pairs;
    std::vector<EdgeTerm> sorted_terms;
    for (std::size_t k : order) {
        sorted_pairs.push_back(pairs[k]);
        sorted_terms.push_back(terms[k]);
    }
    return ObjectiveSpec(ConnectivityGraph(vertices, std::move(sorted_pairs)),
                         std::move(sorted_terms));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "statevector simulation, target-state regression and kernel-PCA pathway recovery";

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<PauliString>(m, "PauliString")
        .def(py::init(&PauliString::parse), py::arg("text"))
        .def_property_readonly("qubit_count", &PauliString::qubit_count)
        .def("is_identity", &PauliString::is_identity)
        .def("__str__", &PauliString::to_string)
        .def("__repr__",
             [](const PauliString& p) { return "PauliString('" + p.to_string() + "')"; });

    py::class_<GateSequence>(m, "GateSequence")
        .def(py::init(&make_sequence), py::arg("qubit_count"), py::arg("gates"),
             py::arg("parameter_count"),
             "gates: list of (pauli_text, parameter_index) applied first-to-last")
        .def_property_readonly("qubit_count", &GateSequence::qubit_count)
        .def_property_readonly("parameter_count", &GateSequence::parameter_count)
        .def_property_readonly("gate_count", &GateSequence::gate_count);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int, Eigen::VectorXcd>(), py::arg("qubit_count"), py::arg("amplitudes"))
        .def_static("zero_state", &StateVector::zero_state, py::arg("qubit_count"))
        .def_property_readonly("qubit_count", &StateVector::qubit_count)
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amplitudes(); })
        .def("norm", &StateVector::norm);

    m.def("apply_pauli_rotation", &apply_pauli_rotation, py::arg("state"), py::arg("generator"),
          py::arg("angle"));
    m.def("build_state",
          py::overload_cast<const GateSequence&, const Eigen::VectorXd&>(&build_state),
          py::arg("sequence"), py::arg("theta"));
    m.def(
        "measure",
        [](const StateVector& s, std::int64_t shots, std::uint64_t seed) {
            std::vector<std::pair<std::uint64_t, std::int64_t>> out;
            for (const MeasurementSample& sample : measure(s, shots, seed)) {
                out.emplace_back(sample.bitstring, sample.count);
            }
            return out;
        },
        py::arg("state"), py::arg("shots"), py::arg("seed"),
        "returns [(bitstring, count), ...] sorted by bitstring");

    py::class_<ObjectiveSpec>(m, "ObjectiveSpec")
        .def(py::init(&make_objective), py::arg("vertices"), py::arg("edges"),
             "edges: list of (i, j, weight) cut clauses with i < j")
        .def_property_readonly("edge_count", &ObjectiveSpec::edge_count)
        .def_property_readonly("qubit_count", &ObjectiveSpec::qubit_count)
        .def("value", &ObjectiveSpec::value, py::arg("bitstring"))
        .def("edges",
             [](const ObjectiveSpec& o) {
                 std::vector<std::tuple<int, int, double>> out;
                 for (int e = 0; e < o.edge_count(); ++e) {
                     const auto& [i, j] = o.graph().edge(e);
                     out.emplace_back(i, j, o.terms()[static_cast<std::size_t>(e)].weight);
                 }
                 return out;
             })
        .def("to_json", [](const ObjectiveSpec& o) { return o.to_json().dump(2); });

    m.def("objective_value", &objective_value, py::arg("state"), py::arg("objective"));
    m.def("decompose_objective", &decompose_objective, py::arg("state"), py::arg("objective"));
    m.def(
        "encode_element",
        [](const ObjectiveSpec& objective, const Eigen::VectorXd& omega) {
            return encode_element(objective.graph(), omega).concatenated();
        },
        py::arg("objective"), py::arg("omega"),
        "concatenated (kappa || omega) input-space vector");
    m.def(
        "decode_element",
        [](const Eigen::VectorXd& upsilon) {
            const DecodeReport r =
                decode_element(PathwayElement::from_concatenated(upsilon));
            return py::make_tuple(r.edge_indices, r.omega, r.total, r.flagged);
        },
        py::arg("upsilon"), "returns (edge_indices, omega, total, flagged_positions)");

    py::class_<RegressionModel>(m, "RegressionModel")
        .def_readonly("chi", &RegressionModel::chi)
        .def_readonly("max_residual", &RegressionModel::max_residual)
        .def_readonly("rank", &RegressionModel::rank)
        .def_readonly("provenance", &RegressionModel::provenance)
        .def_property_readonly("method", [](const RegressionModel& r) {
            return fit_method_name(r.method);
        });

    m.def(
        "fit_chi",
        [](const std::vector<std::pair<Eigen::VectorXd, double>>& samples,
           const std::string& method) {
            std::vector<TrainingSample> converted;
            converted.reserve(samples.size());
            for (const auto& [theta, f] : samples) converted.push_back({theta, f});
            return fit_chi(converted, fit_method_from_name(method));
        },
        py::arg("samples"), py::arg("method") = "least-squares-batch");
    m.def(
        "decompose_theta",
        [](const Eigen::VectorXd& theta0, const RegressionModel& model, double f0) {
            const ThetaDecomposition d = decompose_theta(theta0, model, f0);
            return py::make_tuple(d.f_component, d.null_component);
        },
        py::arg("theta0"), py::arg("model"), py::arg("f0"));
    m.def("target_theta", &target_theta, py::arg("theta0"), py::arg("model"), py::arg("f0"),
          py::arg("f_star"));

    py::class_<KernelModel>(m, "KernelModel")
        .def_static(
            "fit",
            [](const std::vector<Eigen::VectorXd>& points, const std::string& kind,
               double sigma, int degree, double offset, int retain) {
                KernelFunction k = kind == "rbf"
                                       ? KernelFunction::rbf(sigma > 0.0
                                                                 ? sigma
                                                                 : median_pairwise_distance(points))
                                       : KernelFunction::polynomial(degree, offset);
                return KernelModel::fit(points, k, retain);
            },
            py::arg("points"), py::arg("kind") = "rbf", py::arg("sigma") = 0.0,
            py::arg("degree") = 2, py::arg("offset") = 1.0, py::arg("retain") = -1,
            "sigma <= 0 selects the median-distance heuristic; retain < 0 keeps 99% of trace")
        .def_property_readonly("size", &KernelModel::size)
        .def_property_readonly("retained", &KernelModel::retained)
        .def_property_readonly("kernel_matrix",
                               [](const KernelModel& k) { return k.kernel_matrix(); })
        .def_property_readonly("centered_matrix",
                               [](const KernelModel& k) { return k.centered_matrix(); })
        .def_property_readonly("eigenvalues",
                               [](const KernelModel& k) {
                                   std::vector<double> out;
                                   for (const EigenPair& p : k.eigenpairs())
                                       out.push_back(p.lambda);
                                   return out;
                               })
        .def("project_coefficients",
             [](const KernelModel& k, const Eigen::VectorXd& x, int n) {
                 auto [beta, ell] = k.project_coefficients(x, n);
                 return py::make_tuple(beta, ell);
             },
             py::arg("x"), py::arg("n") = -1)
        .def("reconstruction_distance2", &KernelModel::reconstruction_distance2, py::arg("x"),
             py::arg("n") = -1);

    py::class_<PreImageResult>(m, "PreImageResult")
        .def_readonly("solution", &PreImageResult::solution)
        .def_readonly("iterations_used", &PreImageResult::iterations_used)
        .def_readonly("converged", &PreImageResult::converged)
        .def_readonly("restarts", &PreImageResult::restarts)
        .def_readonly("phi_used", &PreImageResult::phi_used)
        .def_readonly("gradient_norm_at_solution", &PreImageResult::gradient_norm_at_solution)
        .def_readonly("distance_trace", &PreImageResult::distance_trace)
        .def_readonly("step_trace", &PreImageResult::step_trace)
        .def_readonly("denominator_trace", &PreImageResult::denominator_trace);

    m.def(
        "solve_preimage",
        [](const KernelModel& model, const Eigen::VectorXd& y0, double phi, int max_iterations,
           double tol, const std::string& restart, std::uint64_t seed, int components) {
            PreImageConfig cfg;
            cfg.phi = phi;
            cfg.max_iterations = max_iterations;
            cfg.tol = tol;
            cfg.restart = restart_policy_from_name(restart);
            cfg.seed = seed;
            cfg.components = components;
            return solve_preimage(model, y0, cfg);
        },
        py::arg("model"), py::arg("y0"), py::arg("phi") = 0.0, py::arg("max_iterations") = 500,
        py::arg("tol") = 1e-8, py::arg("restart") = "grow-phi", py::arg("seed") = 0,
        py::arg("components") = -1);

    m.def(
        "run_full",
        [](const std::string& config_json) {
            const RunConfig cfg = RunConfig::from_json(nlohmann::json::parse(config_json));
            return report_to_json(run_full(cfg)).dump(2);
        },
        py::arg("config_json"), "runs both algorithms, returns the report as a JSON string");
    m.def(
        "validate",
        [](const std::string& config_json) {
            const RunConfig cfg = config_json.empty()
                                      ? RunConfig{}
                                      : RunConfig::from_json(nlohmann::json::parse(config_json));
            const ValidationResult result = validate(cfg);
            return py::make_tuple(result.all_pass, result.transcript());
        },
        py::arg("config_json") = "", "returns (all_pass, transcript)");

#ifdef QPATH_VERSION
    m.attr("__version__") = QPATH_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
