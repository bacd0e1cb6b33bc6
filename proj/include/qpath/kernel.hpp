#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qpath {

/// Kernel over the pathway input space. Two kinds are shipped:
///   rbf:        K(x,y) = exp(-||x-y||^2 / (2 sigma^2))
///   polynomial: K(x,y) = (<x,y> + offset)^degree
class KernelFunction {
public:
    enum class Kind { Rbf, Polynomial };

    static KernelFunction rbf(double sigma);
    static KernelFunction polynomial(int degree, double offset);

    double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    /// Scalar kernel derivative: d K / d ||x-y||^2 for rbf,
    /// d K / d <x,y> for polynomial.
    double derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    /// Gradient of K(x, y) with respect to x.
    Eigen::VectorXd gradient_x(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    /// Gradient of the diagonal x -> K(x, x). Zero for rbf.
    Eigen::VectorXd gradient_diag(const Eigen::VectorXd& x) const;

    Kind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    int degree() const { return degree_; }
    double offset() const { return offset_; }
    std::string describe() const;

private:
    KernelFunction() = default;
    Kind kind_ = Kind::Rbf;
    double sigma_ = 1.0;
    int degree_ = 2;
    double offset_ = 0.0;
};

/// Median pairwise Euclidean distance, the "auto" bandwidth heuristic.
/// Falls back to 1.0 when every pair coincides.
double median_pairwise_distance(const std::vector<Eigen::VectorXd>& points);

/// K[i][j] = k(points[i], points[j]).
Eigen::MatrixXd kernel_matrix(const std::vector<Eigen::VectorXd>& points,
                              const KernelFunction& k);

/// Standard double-centering <K> = H K H with H = I - J/N. Row and column
/// sums of the result vanish; centering an already centered matrix is a
/// no-op.
Eigen::MatrixXd center_kernel_matrix(const Eigen::MatrixXd& K);

/// One solution of <K> alpha = N lambda alpha, with alpha rescaled so that
/// N * lambda * (alpha . alpha) = 1 (unit-norm feature-space eigenvector).
struct EigenPair {
    double lambda = 0.0;
    Eigen::VectorXd alpha;
};

/// Fitted kernel machine over a training set: kernel matrix, centered matrix,
/// eigenpairs of the centered eigenproblem, and the retained component count.
/// Immutable after fit; safe for concurrent evaluation.
class KernelModel {
public:
    /// Eigenvalues (lambda, not N*lambda) at or below this are dropped.
    static constexpr double kEigenvalueCutoff = 1e-12;

    /// retain < 0 selects the default: the smallest n capturing 99% of the
    /// positive spectrum's trace. Throws NumericalError when every eigenvalue
    /// is below the cutoff (degenerate training set).
    static KernelModel fit(std::vector<Eigen::VectorXd> training_set, KernelFunction kernel,
                           int retain = -1);

    int size() const { return static_cast<int>(training_set_.size()); }
    int dimension() const { return static_cast<int>(training_set_.front().size()); }
    const std::vector<Eigen::VectorXd>& training_set() const { return training_set_; }
    const KernelFunction& kernel() const { return kernel_; }
    const Eigen::MatrixXd& kernel_matrix() const { return kernel_matrix_; }
    const Eigen::MatrixXd& centered_matrix() const { return centered_matrix_; }

    /// All eigenpairs above the cutoff, descending by lambda.
    const std::vector<EigenPair>& eigenpairs() const { return eigenpairs_; }
    int retained() const { return retained_; }

    /// Largest |K_ij| over the training kernel matrix.
    double max_abs_kernel() const { return max_abs_kernel_; }

    /// Raw kernel row k(x, Y_j) for all training points.
    Eigen::VectorXd raw_eval(const Eigen::VectorXd& x) const;

    /// Centered evaluation K~(x, Y_j) = K(x,Y_j) - rowmean_x - colmean_j +
    /// grandmean, consistent with the centered eigenproblem for out-of-sample
    /// points.
    Eigen::VectorXd centered_eval(const Eigen::VectorXd& x) const;

    /// K~(x, x), the centered diagonal value at x.
    double centered_diag(const Eigen::VectorXd& x) const;

    /// Projection coefficients onto the first n components:
    ///   beta_k = sum_j alpha_j^k K~(x, Y_j)        (length n)
    ///   ell_i  = sum_{k<=n} beta_k alpha_i^k       (length N)
    /// n < 0 uses the model's retained count.
    std::pair<Eigen::VectorXd, Eigen::VectorXd> project_coefficients(const Eigen::VectorXd& x,
                                                                     int n = -1) const;

    /// Squared feature-space distance between Gamma~(x) and its projection
    /// onto the first n components, evaluated entirely through kernel calls:
    /// K~(x,x) - sum_k beta_k^2.
    double reconstruction_distance2(const Eigen::VectorXd& x, int n = -1) const;

private:
    KernelModel() : kernel_(KernelFunction::rbf(1.0)) {}

    std::vector<Eigen::VectorXd> training_set_;
    KernelFunction kernel_;
    Eigen::MatrixXd kernel_matrix_;
    Eigen::MatrixXd centered_matrix_;
    Eigen::VectorXd column_means_;  // (1/N) sum_i K(Y_i, Y_j)
    double grand_mean_ = 0.0;
    std::vector<EigenPair> eigenpairs_;
    int retained_ = 0;
    double max_abs_kernel_ = 0.0;
};

} // namespace qpath
