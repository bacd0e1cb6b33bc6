#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpath/kernel.hpp"

namespace qpath {

enum class RestartPolicy { None, Perturb, GrowPhi };

std::string restart_policy_name(RestartPolicy p);
RestartPolicy restart_policy_from_name(const std::string& name);

struct PreImageConfig {
    double phi = 0.0;            ///< regularizer weight, >= 0
    int max_iterations = 500;    ///< hard cap R
    double tol = 1e-8;           ///< early exit on ||Y_r - Y_{r-1}|| <= tol
    RestartPolicy restart = RestartPolicy::GrowPhi;
    double restart_factor = 10.0; ///< grow-phi multiplier
    double perturb_scale = 1e-3;  ///< perturb step scale
    std::uint64_t seed = 0;       ///< perturb noise seed
    int components = -1;          ///< projection rank n; -1 = model retained
};

struct PreImageResult {
    Eigen::VectorXd solution;
    int iterations_used = 0;
    bool converged = false;
    int restarts = 0;
    double phi_used = 0.0; ///< phi after any grow-phi restarts
    double gradient_norm_at_solution = 0.0;
    std::vector<double> distance_trace;    ///< f_d per iteration (may be non-monotone)
    std::vector<double> step_trace;        ///< ||Y_r - Y_{r-1}||
    std::vector<double> denominator_trace; ///< tau* P(tau0) + phi per iteration
    std::vector<bool> in_hull_trace;       ///< all combination weights nonnegative
};

/// Extremum diagnostic: the sigma-weighted mean of the training points and
/// the gradient norm there. Purely informational.
struct ExtremumDiagnostic {
    Eigen::VectorXd extremum;
    Eigen::VectorXd sigma_weights;
    double gradient_norm_at_extremum = 0.0;
    double distance_to_solution = 0.0;
    bool conclusive = false;
};

/// Pre-image machinery for one anchor element Y0: the regularized
/// feature-space distance, its gradient, and the fixed-point iteration.
///
/// The projection coefficients beta and ell are computed once from Y0 (the
/// projected element is fixed); the reconstruction weights
///
///     gamma_i = ell_i + (1 - sum_j ell_j) / N
///
/// absorb the training-mean component of the projected feature vector, so
/// that the distance expands in plain kernel evaluations:
///
///     f_d(x) = K(x,x) - 2 sum_i gamma_i K(x, Y_i) + phi (x.x - 2 x.Y0)
///
/// and the fixed-point update is the gamma-weighted mean of the training
/// points blended with the anchor. With all components retained this
/// reconstructs a training-point anchor exactly.
class PreImageSolver {
public:
    PreImageSolver(const KernelModel& model, Eigen::VectorXd y0, int components = -1);

    /// Constant-dropped regularized distance at x.
    double distance(const Eigen::VectorXd& x, double phi) const;

    /// Exact gradient of distance() with respect to x (matches central
    /// finite differences; includes the diagonal term for polynomial
    /// kernels and the factor 2 from the quadratic regularizer).
    Eigen::VectorXd gradient(const Eigen::VectorXd& x, double phi) const;

    /// Denominator tau* P(tau0) + phi evaluated at the previous iterate.
    double denominator(const Eigen::VectorXd& prev, double phi) const;

    /// One fixed-point step. Throws NumericalError when the denominator
    /// falls to 1e-12 or below (collapse; the solver's restart policy
    /// handles it).
    Eigen::VectorXd iterate_once(const Eigen::VectorXd& prev, double phi) const;

    /// Runs the iteration from Y0. Throws NumericalError when the projection
    /// of Y0 is numerically zero (every |beta_k| <= 1e-12). Restarts on
    /// denominator collapse at most 3 times per the configured policy.
    PreImageResult solve(const PreImageConfig& config) const;

    /// Evaluates the extremum equation self-consistently, seeded at the
    /// solution. Marked inconclusive when the sigma weights sum below 1e-12.
    ExtremumDiagnostic extremum_check(const PreImageResult& result, double phi) const;

    const Eigen::VectorXd& beta() const { return beta_; }
    const Eigen::VectorXd& ell() const { return ell_; }
    const Eigen::VectorXd& mean_weights() const { return gamma_; }
    const Eigen::VectorXd& anchor() const { return y0_; }
    int components() const { return components_; }

private:
    const KernelModel* model_;
    Eigen::VectorXd y0_;
    int components_;
    Eigen::VectorXd beta_;  // length components_
    Eigen::VectorXd ell_;   // length N
    Eigen::VectorXd gamma_; // length N
};

/// Convenience wrapper: build a solver at Y0 and run it.
PreImageResult solve_preimage(const KernelModel& model, const Eigen::VectorXd& y0,
                              const PreImageConfig& config);

} // namespace qpath
