#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpath/config.hpp"
#include "qpath/pathway.hpp"
#include "qpath/preimage.hpp"
#include "qpath/regression.hpp"

namespace qpath {

/// Training data for both fitting routes: (theta_i, f_i) pairs plus the
/// encoded pathway elements Upsilon_i.
struct TrainingSet {
    std::vector<TrainingSample> samples;
    std::vector<Eigen::VectorXd> upsilon;
};

Instance make_instance(const InstanceConfig& cfg);

/// Simulates N parameter draws. theta ~ the configured distribution,
/// f = exact objective, Upsilon = encoded per-edge decomposition.
/// Deterministic under the training seed.
TrainingSet sample_training_set(const Instance& instance, const TrainingConfig& cfg,
                                const Eigen::VectorXd& theta0);

Eigen::VectorXd make_theta0(const RunSectionConfig& cfg, int parameter_count);

/// Result of Algorithm-1 style state determination.
struct StateDetermination {
    Eigen::VectorXd theta0;
    double f0 = 0.0;
    double f_star = 0.0;
    RegressionModel model;
    ThetaDecomposition decomposition;
    Eigen::VectorXd theta_star;
    double chi_dot_theta_star = 0.0;
    double identity_residual = 0.0; ///< |chi . theta* - (chi . theta0 + f* - f0)|
    double f_sim_theta_star = 0.0;
    double gap = 0.0; ///< |f_sim(theta*) - f*|, reported, never asserted zero
};

/// One row of the local-linearity ratio sweep.
struct RatioRow {
    double delta_f = 0.0;
    double f_star = 0.0;
    double f_sim = 0.0;
    double gap = 0.0;
    double ratio = 0.0; ///< gap / delta_f^2
};

StateDetermination run_state_determination(const Instance& instance, const TrainingSet& training,
                                           const RunConfig& cfg);

std::vector<RatioRow> run_ratio_sweep(const Instance& instance, const TrainingSet& training,
                                      const RunConfig& cfg);

/// Result of Algorithm-2 style pathway recovery.
struct PathwayRun {
    Eigen::VectorXd upsilon0;
    int kernel_retained = 0;
    double kernel_sigma = 0.0; ///< resolved rbf width (0 for poly)
    PreImageResult preimage;
    DecodeReport decoded;
    ExtremumDiagnostic extremum;
    Eigen::VectorXd omega_sim_at_target; ///< decompose_objective at theta*
    double max_edge_deviation = 0.0;     ///< max |omega*_e - omega_sim_e|
};

PathwayRun run_pathway(const Instance& instance, const TrainingSet& training,
                       const StateDetermination& state, const RunConfig& cfg);

/// Full report of one end-to-end run; serialization lives in report.hpp.
struct RunReport {
    RunConfig config;
    Instance instance;
    StateDetermination state;
    std::vector<RatioRow> ratio_table;
    std::optional<PathwayRun> pathway;
};

/// Per-stage wall times, kept out of the main report for reproducibility.
struct StageTimings {
    double training_ms = 0.0;
    double state_ms = 0.0;
    double pathway_ms = 0.0;
    double total_ms = 0.0;
};

/// Runs Algorithm 1, optionally the ratio sweep, and Algorithm 2.
RunReport run_full(const RunConfig& cfg, StageTimings* timings = nullptr,
                   bool with_ratio_sweep = true);

/// Algorithm 1 only (plus ratio sweep when configured).
RunReport run_determine_state(const RunConfig& cfg, StageTimings* timings = nullptr);

} // namespace qpath
