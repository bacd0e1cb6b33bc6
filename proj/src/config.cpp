#include "qpath/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"

namespace qpath {

namespace {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

} // namespace

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["instance"] = {{"kind", instance_kind_name(instance.kind)},
                     {"size", instance.size},
                     {"seed", instance.seed},
                     {"layers", instance.layers},
                     {"per_gate_parameters", instance.per_gate_parameters}};
    if (!instance.file.empty()) j["instance"]["file"] = instance.file;
    j["training"] = {{"count", training.count},
                     {"distribution", training.distribution},
                     {"low", training.low},
                     {"high", training.high},
                     {"radius", training.radius},
                     {"seed", training.seed}};
    j["regression"] = {{"method", fit_method_name(regression)}};
    j["kernel"] = {{"kind", kernel.kind},
                   {"sigma", kernel.sigma > 0.0 ? nlohmann::json(kernel.sigma)
                                                : nlohmann::json("auto")},
                   {"degree", kernel.degree},
                   {"offset", kernel.offset},
                   {"retain", kernel.retain > 0 ? nlohmann::json(kernel.retain)
                                                : nlohmann::json("auto")}};
    j["preimage"] = {{"phi", preimage.phi},
                     {"max_iterations", preimage.max_iterations},
                     {"tol", preimage.tol},
                     {"restart", restart_policy_name(preimage.restart)},
                     {"restart_factor", preimage.restart_factor},
                     {"perturb_scale", preimage.perturb_scale},
                     {"seed", preimage.seed}};
    j["run"] = {{"theta0", run.theta0},
                {"theta0_seed", run.theta0_seed},
                {"f_star_mode", run.f_star_mode},
                {"f_star", run.f_star},
                {"ratio_steps", run.ratio_steps}};
    if (!run.theta0_values.empty()) j["run"]["theta0_values"] = run.theta0_values;
    j["output"] = {{"dir", output.dir}, {"format", output.format}, {"quiet", output.quiet}};
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (j.contains("schema") && j.at("schema").get<int>() != 1) {
        throw ConfigError("config: unsupported schema version");
    }
    RunConfig cfg;
    if (j.contains("instance")) {
        const auto& ji = j.at("instance");
        cfg.instance.kind =
            instance_kind_from_name(get_or<std::string>(ji, "kind", "maxcut-ring"));
        cfg.instance.size = get_or<int>(ji, "size", cfg.instance.size);
        cfg.instance.seed = get_or<std::uint64_t>(ji, "seed", cfg.instance.seed);
        cfg.instance.layers = get_or<int>(ji, "layers", cfg.instance.layers);
        cfg.instance.per_gate_parameters =
            get_or<bool>(ji, "per_gate_parameters", cfg.instance.per_gate_parameters);
        cfg.instance.file = get_or<std::string>(ji, "file", "");
    }
    if (j.contains("training")) {
        const auto& jt = j.at("training");
        cfg.training.count = get_or<int>(jt, "count", cfg.training.count);
        cfg.training.distribution =
            get_or<std::string>(jt, "distribution", cfg.training.distribution);
        cfg.training.low = get_or<double>(jt, "low", cfg.training.low);
        cfg.training.high = get_or<double>(jt, "high", cfg.training.high);
        cfg.training.radius = get_or<double>(jt, "radius", cfg.training.radius);
        cfg.training.seed = get_or<std::uint64_t>(jt, "seed", cfg.training.seed);
        if (cfg.training.count < 2) {
            throw ConfigError("config: training.count must be >= 2");
        }
        if (cfg.training.distribution != "uniform" && cfg.training.distribution != "cluster") {
            throw ConfigError("config: training.distribution must be 'uniform' or 'cluster'");
        }
    }
    if (j.contains("regression")) {
        cfg.regression = fit_method_from_name(
            get_or<std::string>(j.at("regression"), "method", "least-squares-batch"));
    }
    if (j.contains("kernel")) {
        const auto& jk = j.at("kernel");
        cfg.kernel.kind = get_or<std::string>(jk, "kind", cfg.kernel.kind);
        if (cfg.kernel.kind != "rbf" && cfg.kernel.kind != "poly") {
            throw ConfigError("config: kernel.kind must be 'rbf' or 'poly'");
        }
        if (jk.contains("sigma") && !jk.at("sigma").is_string()) {
            cfg.kernel.sigma = jk.at("sigma").get<double>();
        }
        cfg.kernel.degree = get_or<int>(jk, "degree", cfg.kernel.degree);
        cfg.kernel.offset = get_or<double>(jk, "offset", cfg.kernel.offset);
        if (jk.contains("retain") && !jk.at("retain").is_string()) {
            cfg.kernel.retain = jk.at("retain").get<int>();
        }
    }
    if (j.contains("preimage")) {
        const auto& jp = j.at("preimage");
        cfg.preimage.phi = get_or<double>(jp, "phi", cfg.preimage.phi);
        cfg.preimage.max_iterations =
            get_or<int>(jp, "max_iterations", cfg.preimage.max_iterations);
        cfg.preimage.tol = get_or<double>(jp, "tol", cfg.preimage.tol);
        cfg.preimage.restart =
            restart_policy_from_name(get_or<std::string>(jp, "restart", "grow-phi"));
        cfg.preimage.restart_factor =
            get_or<double>(jp, "restart_factor", cfg.preimage.restart_factor);
        cfg.preimage.perturb_scale =
            get_or<double>(jp, "perturb_scale", cfg.preimage.perturb_scale);
        cfg.preimage.seed = get_or<std::uint64_t>(jp, "seed", cfg.preimage.seed);
        if (cfg.preimage.phi < 0.0) {
            throw ConfigError("config: preimage.phi must be >= 0");
        }
    }
    if (j.contains("run")) {
        const auto& jr = j.at("run");
        cfg.run.theta0 = get_or<std::string>(jr, "theta0", cfg.run.theta0);
        if (cfg.run.theta0 != "zero" && cfg.run.theta0 != "random" &&
            cfg.run.theta0 != "values") {
            throw ConfigError("config: run.theta0 must be 'zero', 'random' or 'values'");
        }
        cfg.run.theta0_values =
            get_or<std::vector<double>>(jr, "theta0_values", cfg.run.theta0_values);
        cfg.run.theta0_seed = get_or<std::uint64_t>(jr, "theta0_seed", cfg.run.theta0_seed);
        cfg.run.f_star_mode = get_or<std::string>(jr, "f_star_mode", cfg.run.f_star_mode);
        if (cfg.run.f_star_mode != "relative" && cfg.run.f_star_mode != "absolute") {
            throw ConfigError("config: run.f_star_mode must be 'relative' or 'absolute'");
        }
        cfg.run.f_star = get_or<double>(jr, "f_star", cfg.run.f_star);
        cfg.run.ratio_steps = get_or<std::vector<double>>(jr, "ratio_steps", cfg.run.ratio_steps);
    }
    if (j.contains("output")) {
        const auto& jo = j.at("output");
        cfg.output.dir = get_or<std::string>(jo, "dir", cfg.output.dir);
        cfg.output.format = get_or<std::string>(jo, "format", cfg.output.format);
        cfg.output.quiet = get_or<bool>(jo, "quiet", cfg.output.quiet);
        if (cfg.output.format != "json" && cfg.output.format != "csv" &&
            cfg.output.format != "both") {
            throw ConfigError("config: output.format must be 'json', 'csv' or 'both'");
        }
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

void RunConfig::override_seeds(std::uint64_t master) {
    instance.seed = master;
    training.seed = master + 1;
    run.theta0_seed = master + 2;
    preimage.seed = master + 3;
}

KernelFunction make_kernel(const KernelConfig& cfg, const std::vector<Eigen::VectorXd>& points) {
    if (cfg.kind == "rbf") {
        const double sigma = cfg.sigma > 0.0 ? cfg.sigma : median_pairwise_distance(points);
        return KernelFunction::rbf(sigma);
    }
    return KernelFunction::polynomial(cfg.degree, cfg.offset);
}

} // namespace qpath
