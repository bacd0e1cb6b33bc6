#include "qpath/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"
#include "qpath/rng.hpp"

namespace qpath {

Instance make_instance(const InstanceConfig& cfg) {
    if (cfg.file.empty()) {
        return generate_instance(cfg.kind, cfg.size, cfg.seed, cfg.layers,
                                 cfg.per_gate_parameters);
    }
    std::ifstream in(cfg.file);
    if (!in) {
        throw ConfigError("cannot open instance file '" + cfg.file + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("instance parse error in '" + cfg.file + "': " + e.what());
    }
    // accept either a bare graph document or a full instance document
    const nlohmann::json& graph_json = j.contains("graph") ? j.at("graph") : j;
    ObjectiveSpec objective = ObjectiveSpec::from_json(graph_json);
    ConnectivityGraph graph = objective.graph();
    const int layers = j.contains("circuit")
                           ? j.at("circuit").value("layers", cfg.layers)
                           : cfg.layers;
    const bool per_gate = j.contains("circuit")
                              ? j.at("circuit").value("per_gate_parameters",
                                                      cfg.per_gate_parameters)
                              : cfg.per_gate_parameters;
    GateSequence circuit = build_ansatz(graph, layers, per_gate);
    const int size = graph.vertex_count();
    return Instance{std::move(graph), std::move(objective), std::move(circuit),
                    cfg.kind, size,   cfg.seed,
                    layers,   per_gate};
}

Eigen::VectorXd make_theta0(const RunSectionConfig& cfg, int parameter_count) {
    if (cfg.theta0 == "zero") {
        return Eigen::VectorXd::Zero(parameter_count);
    }
    if (cfg.theta0 == "random") {
        SeededRng rng(cfg.theta0_seed);
        Eigen::VectorXd theta(parameter_count);
        for (int i = 0; i < parameter_count; ++i) {
            theta[i] = rng.uniform(0.0, 6.283185307179586);
        }
        return theta;
    }
    if (static_cast<int>(cfg.theta0_values.size()) != parameter_count) {
        throw ConfigError("run.theta0_values length " +
                          std::to_string(cfg.theta0_values.size()) +
                          " does not match parameter count " + std::to_string(parameter_count));
    }
    return Eigen::Map<const Eigen::VectorXd>(cfg.theta0_values.data(), parameter_count);
}

TrainingSet sample_training_set(const Instance& instance, const TrainingConfig& cfg,
                                const Eigen::VectorXd& theta0) {
    if (cfg.count < 2) {
        throw ConfigError("sample_training_set: count must be >= 2");
    }
    const int len = instance.circuit.parameter_count();
    const bool cluster = cfg.distribution == "cluster";
    if (cluster && theta0.size() != len) {
        throw StructuralError("sample_training_set: theta0 length mismatch for cluster draws");
    }
    SeededRng rng(cfg.seed);
    TrainingSet out;
    out.samples.reserve(static_cast<std::size_t>(cfg.count));
    out.upsilon.reserve(static_cast<std::size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) {
        Eigen::VectorXd theta(len);
        for (int k = 0; k < len; ++k) {
            theta[k] = cluster ? theta0[k] + cfg.radius * rng.normal()
                               : rng.uniform(cfg.low, cfg.high);
        }
        const StateVector state = build_state(instance.circuit, theta);
        const double f = objective_value(state, instance.objective);
        const Eigen::VectorXd omega = decompose_objective(state, instance.objective);
        out.samples.push_back({std::move(theta), f});
        out.upsilon.push_back(encode_element(instance.graph, omega).concatenated());
    }
    return out;
}

namespace {

RegressionModel fit_from_config(const Instance& instance, const TrainingSet& training,
                                const RunConfig& cfg, const Eigen::VectorXd& theta0, double f0) {
    switch (cfg.regression) {
    case FitMethod::MinNormSingle:
        return fit_chi({TrainingSample{theta0, f0}}, FitMethod::MinNormSingle);
    case FitMethod::LeastSquaresBatch:
        return fit_chi(training.samples, FitMethod::LeastSquaresBatch);
    case FitMethod::KernelCoefficients: {
        KernelModel kernel = KernelModel::fit(
            training.upsilon, make_kernel(cfg.kernel, training.upsilon), cfg.kernel.retain);
        const StateVector state0 = build_state(instance.circuit, theta0);
        const Eigen::VectorXd upsilon0 =
            encode_element(instance.graph, decompose_objective(state0, instance.objective))
                .concatenated();
        return fit_chi(training.samples, kernel, upsilon0);
    }
    }
    throw ConfigError("unknown regression method");
}

} // namespace

StateDetermination run_state_determination(const Instance& instance, const TrainingSet& training,
                                           const RunConfig& cfg) {
    StateDetermination out;
    out.theta0 = make_theta0(cfg.run, instance.circuit.parameter_count());
    out.f0 = objective_value(build_state(instance.circuit, out.theta0), instance.objective);
    out.f_star = cfg.run.f_star_mode == "relative" ? out.f0 + cfg.run.f_star : cfg.run.f_star;
    out.model = fit_from_config(instance, training, cfg, out.theta0, out.f0);
    out.decomposition = decompose_theta(out.theta0, out.model, out.f0);
    out.theta_star = target_theta(out.theta0, out.model, out.f0, out.f_star);
    out.chi_dot_theta_star = out.model.chi.dot(out.theta_star);
    out.identity_residual = std::abs(out.chi_dot_theta_star -
                                     (out.model.chi.dot(out.theta0) + out.f_star - out.f0));
    out.f_sim_theta_star =
        objective_value(build_state(instance.circuit, out.theta_star), instance.objective);
    out.gap = std::abs(out.f_sim_theta_star - out.f_star);
    return out;
}

std::vector<RatioRow> run_ratio_sweep(const Instance& instance, const TrainingSet& training,
                                      const RunConfig& cfg) {
    std::vector<RatioRow> rows;
    if (cfg.run.ratio_steps.empty()) return rows;
    const Eigen::VectorXd theta0 = make_theta0(cfg.run, instance.circuit.parameter_count());
    const double f0 =
        objective_value(build_state(instance.circuit, theta0), instance.objective);
    const RegressionModel model = fit_from_config(instance, training, cfg, theta0, f0);
    for (double step : cfg.run.ratio_steps) {
        if (step == 0.0) {
            throw ConfigError("ratio_steps must be nonzero");
        }
        RatioRow row;
        row.delta_f = step;
        row.f_star = f0 + step;
        const Eigen::VectorXd theta_star = target_theta(theta0, model, f0, row.f_star);
        row.f_sim =
            objective_value(build_state(instance.circuit, theta_star), instance.objective);
        row.gap = std::abs(row.f_sim - row.f_star);
        row.ratio = row.gap / (step * step);
        rows.push_back(row);
    }
    return rows;
}

PathwayRun run_pathway(const Instance& instance, const TrainingSet& training,
                       const StateDetermination& state, const RunConfig& cfg) {
    PathwayRun out;
    const StateVector state0 = build_state(instance.circuit, state.theta0);
    out.upsilon0 =
        encode_element(instance.graph, decompose_objective(state0, instance.objective))
            .concatenated();

    KernelFunction kernel = make_kernel(cfg.kernel, training.upsilon);
    out.kernel_sigma = kernel.kind() == KernelFunction::Kind::Rbf ? kernel.sigma() : 0.0;
    KernelModel model = KernelModel::fit(training.upsilon, kernel, cfg.kernel.retain);
    out.kernel_retained = model.retained();

    PreImageSolver solver(model, out.upsilon0, cfg.preimage.components);
    out.preimage = solver.solve(cfg.preimage);
    out.extremum = solver.extremum_check(out.preimage, out.preimage.phi_used);

    out.decoded = decode_element(PathwayElement::from_concatenated(out.preimage.solution));

    const StateVector target_state = build_state(instance.circuit, state.theta_star);
    out.omega_sim_at_target = decompose_objective(target_state, instance.objective);
    out.max_edge_deviation =
        (out.decoded.omega - out.omega_sim_at_target).lpNorm<Eigen::Infinity>();
    return out;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
        .count();
}

} // namespace

RunReport run_determine_state(const RunConfig& cfg, StageTimings* timings) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report{cfg, make_instance(cfg.instance), {}, {}, std::nullopt};
    const Eigen::VectorXd theta0 =
        make_theta0(cfg.run, report.instance.circuit.parameter_count());
    TrainingSet training = sample_training_set(report.instance, cfg.training, theta0);
    const auto t1 = std::chrono::steady_clock::now();
    report.state = run_state_determination(report.instance, training, cfg);
    report.ratio_table = run_ratio_sweep(report.instance, training, cfg);
    if (timings) {
        timings->training_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        timings->state_ms = elapsed_ms(t1);
        timings->total_ms = elapsed_ms(t0);
    }
    return report;
}

RunReport run_full(const RunConfig& cfg, StageTimings* timings, bool with_ratio_sweep) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report{cfg, make_instance(cfg.instance), {}, {}, std::nullopt};
    const Eigen::VectorXd theta0 =
        make_theta0(cfg.run, report.instance.circuit.parameter_count());
    TrainingSet training = sample_training_set(report.instance, cfg.training, theta0);
    const auto t1 = std::chrono::steady_clock::now();
    report.state = run_state_determination(report.instance, training, cfg);
    if (with_ratio_sweep) {
        report.ratio_table = run_ratio_sweep(report.instance, training, cfg);
    }
    const auto t2 = std::chrono::steady_clock::now();
    report.pathway = run_pathway(report.instance, training, report.state, cfg);
    if (timings) {
        timings->training_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        timings->state_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        timings->pathway_ms = elapsed_ms(t2);
        timings->total_ms = elapsed_ms(t0);
    }
    return report;
}

} // namespace qpath
