#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpath {

class KernelModel;

enum class FitMethod { MinNormSingle, LeastSquaresBatch, KernelCoefficients };

std::string fit_method_name(FitMethod m);
FitMethod fit_method_from_name(const std::string& name);

/// One (theta, f) observation.
struct TrainingSample {
    Eigen::VectorXd theta;
    double f = 0.0;
};

/// Regression coefficients chi with f(theta) modeled as theta . chi.
/// Invariant: chi is finite and not all-zero (enforced at fit time).
struct RegressionModel {
    Eigen::VectorXd chi;
    FitMethod method = FitMethod::MinNormSingle;
    std::string provenance;
    double max_residual = 0.0; ///< max_i |theta_i . chi - f_i| over the fit samples
    int rank = 0;              ///< numerical rank of the stacked theta matrix
};

/// Moore-Penrose pseudoinverse of a nonzero vector: chi^T / ||chi||^2.
Eigen::RowVectorXd vector_pseudoinverse(const Eigen::VectorXd& chi);

/// Fits chi from samples.
///  - MinNormSingle (one sample): chi = theta0 * f0 / ||theta0||^2, the
///    minimum-norm solution of theta0 . chi = f0.
///  - LeastSquaresBatch: minimum-norm least squares via SVD.
/// KernelCoefficients requires a kernel model; use the overload below.
RegressionModel fit_chi(const std::vector<TrainingSample>& samples, FitMethod method);

/// Kernel-coefficient fit: chi_j = beta_j evaluated at `proxy_point` on the
/// centered kernel model. Requires theta length == training-set size; the
/// proxy evaluation point stands in for the unknown target element and is
/// recorded in the provenance.
RegressionModel fit_chi(const std::vector<TrainingSample>& samples, const KernelModel& model,
                        const Eigen::VectorXd& proxy_point);

/// Split of theta0 into the objective-dependent component and the null-space
/// remainder: f_component + null_component == theta0.
struct ThetaDecomposition {
    Eigen::VectorXd f_component;
    Eigen::VectorXd null_component;
};

/// f_component = chi^+ * f0 (the pseudoinverse row scaled by f0);
/// null_component = theta0 - f_component. When theta0 . chi == f0 the null
/// component is orthogonal to chi; otherwise chi . null_component equals the
/// fit residual theta0 . chi - f0.
ThetaDecomposition decompose_theta(const Eigen::VectorXd& theta0, const RegressionModel& model,
                                   double f0);

/// Target parameters theta* = theta0 + chi^+ (f_star - f0). Satisfies
/// chi . theta* = chi . theta0 + (f_star - f0) identically.
Eigen::VectorXd target_theta(const Eigen::VectorXd& theta0, const RegressionModel& model,
                             double f0, double f_star);

} // namespace qpath
