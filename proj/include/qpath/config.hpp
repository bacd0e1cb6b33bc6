#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qpath/instance.hpp"
#include "qpath/preimage.hpp"
#include "qpath/regression.hpp"

namespace qpath {

/// Where the instance comes from: a generator or a graph file.
struct InstanceConfig {
    InstanceKind kind = InstanceKind::MaxcutRing;
    int size = 4;
    std::uint64_t seed = 11;
    int layers = 1;
    bool per_gate_parameters = true;
    std::string file; ///< optional graph/instance JSON path; overrides the generator
};

struct TrainingConfig {
    int count = 100;
    std::string distribution = "uniform"; ///< "uniform" over [low, high) or "cluster" around theta0
    double low = 0.0;
    double high = 6.283185307179586;
    double radius = 0.05; ///< cluster standard deviation
    std::uint64_t seed = 12;
};

struct KernelConfig {
    std::string kind = "rbf"; ///< "rbf" | "poly"
    double sigma = 0.0;       ///< rbf width; <= 0 means "auto" (median distance)
    int degree = 2;
    double offset = 1.0;
    int retain = -1; ///< components to retain; -1 means "auto" (99% of trace)
};

struct RunSectionConfig {
    std::string theta0 = "zero"; ///< "zero" | "random" | "values"
    std::vector<double> theta0_values;
    std::uint64_t theta0_seed = 14;
    std::string f_star_mode = "relative"; ///< "relative" (f0 + value) | "absolute"
    double f_star = 0.25;
    std::vector<double> ratio_steps; ///< optional local-linearity sweep of delta-f values
};

struct OutputConfig {
    std::string dir = "out";
    std::string format = "both"; ///< "json" | "csv" | "both"
    bool quiet = false;
};

/// Complete run configuration. Every seed is explicit: a config determines a
/// run bit for bit.
struct RunConfig {
    InstanceConfig instance;
    TrainingConfig training;
    FitMethod regression = FitMethod::LeastSquaresBatch;
    KernelConfig kernel;
    PreImageConfig preimage;
    RunSectionConfig run;
    OutputConfig output;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);

    /// Re-derives every per-stage seed from one master seed (CLI --seed).
    void override_seeds(std::uint64_t master);
};

KernelFunction make_kernel(const KernelConfig& cfg, const std::vector<Eigen::VectorXd>& points);

} // namespace qpath
