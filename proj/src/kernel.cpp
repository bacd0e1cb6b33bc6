#include "qpath/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpath/errors.hpp"

namespace qpath {

KernelFunction KernelFunction::rbf(double sigma) {
    if (!(sigma > 0.0)) {
        throw ConfigError("rbf kernel: width sigma must be positive");
    }
    KernelFunction k;
    k.kind_ = Kind::Rbf;
    k.sigma_ = sigma;
    return k;
}

KernelFunction KernelFunction::polynomial(int degree, double offset) {
    if (degree < 1) {
        throw ConfigError("polynomial kernel: degree must be >= 1");
    }
    if (offset < 0.0) {
        throw ConfigError("polynomial kernel: offset must be >= 0");
    }
    KernelFunction k;
    k.kind_ = Kind::Polynomial;
    k.degree_ = degree;
    k.offset_ = offset;
    return k;
}

double KernelFunction::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    switch (kind_) {
    case Kind::Rbf:
        return std::exp(-(x - y).squaredNorm() / (2.0 * sigma_ * sigma_));
    case Kind::Polynomial:
        return std::pow(x.dot(y) + offset_, degree_);
    }
    return 0.0;
}

double KernelFunction::derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    switch (kind_) {
    case Kind::Rbf:
        // d/d||x-y||^2 exp(-||x-y||^2 / (2 sigma^2))
        return -(*this)(x, y) / (2.0 * sigma_ * sigma_);
    case Kind::Polynomial:
        // d/d<x,y> (<x,y> + c)^d
        return degree_ * std::pow(x.dot(y) + offset_, degree_ - 1);
    }
    return 0.0;
}

Eigen::VectorXd KernelFunction::gradient_x(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y) const {
    switch (kind_) {
    case Kind::Rbf:
        return derivative(x, y) * 2.0 * (x - y);
    case Kind::Polynomial:
        return derivative(x, y) * y;
    }
    return Eigen::VectorXd::Zero(x.size());
}

Eigen::VectorXd KernelFunction::gradient_diag(const Eigen::VectorXd& x) const {
    switch (kind_) {
    case Kind::Rbf:
        return Eigen::VectorXd::Zero(x.size()); // K(x,x) = 1
    case Kind::Polynomial:
        return 2.0 * degree_ * std::pow(x.dot(x) + offset_, degree_ - 1) * x;
    }
    return Eigen::VectorXd::Zero(x.size());
}

std::string KernelFunction::describe() const {
    switch (kind_) {
    case Kind::Rbf:
        return "rbf(sigma=" + std::to_string(sigma_) + ")";
    case Kind::Polynomial:
        return "poly(degree=" + std::to_string(degree_) + ", offset=" + std::to_string(offset_) +
               ")";
    }
    return "?";
}

double median_pairwise_distance(const std::vector<Eigen::VectorXd>& points) {
    std::vector<double> dists;
    dists.reserve(points.size() * (points.size() - 1) / 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            dists.push_back((points[i] - points[j]).norm());
        }
    }
    if (dists.empty()) return 1.0;
    std::sort(dists.begin(), dists.end());
    const double med = dists[dists.size() / 2];
    return med > 0.0 ? med : 1.0;
}

Eigen::MatrixXd kernel_matrix(const std::vector<Eigen::VectorXd>& points,
                              const KernelFunction& k) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 2) {
        throw StructuralError("kernel_matrix: at least two points required");
    }
    for (const auto& p : points) {
        if (p.size() != points.front().size()) {
            throw StructuralError("kernel_matrix: inconsistent point dimensions");
        }
    }
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = k(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = k(points[static_cast<std::size_t>(i)],
                               points[static_cast<std::size_t>(j)]);
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

Eigen::MatrixXd center_kernel_matrix(const Eigen::MatrixXd& K) {
    if (K.rows() != K.cols()) {
        throw StructuralError("center_kernel_matrix: matrix must be square");
    }
    const Eigen::Index n = K.rows();
    const Eigen::VectorXd row_means = K.rowwise().mean();
    const double grand = K.mean();
    Eigen::MatrixXd centered = K;
    centered.colwise() -= row_means;
    centered.rowwise() -= row_means.transpose();
    centered.array() += grand;
    (void)n;
    return centered;
}

KernelModel KernelModel::fit(std::vector<Eigen::VectorXd> training_set, KernelFunction kernel,
                             int retain) {
    KernelModel m;
    m.training_set_ = std::move(training_set);
    m.kernel_ = kernel;
    m.kernel_matrix_ = qpath::kernel_matrix(m.training_set_, m.kernel_);
    m.centered_matrix_ = center_kernel_matrix(m.kernel_matrix_);
    m.column_means_ = m.kernel_matrix_.colwise().mean();
    m.grand_mean_ = m.kernel_matrix_.mean();
    m.max_abs_kernel_ = m.kernel_matrix_.cwiseAbs().maxCoeff();

    const auto n = static_cast<double>(m.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.centered_matrix_);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("KernelModel: eigendecomposition failed");
    }
    // ascending eigenvalues of <K>; <K> alpha = N lambda alpha
    const Eigen::VectorXd evals = solver.eigenvalues();
    const Eigen::MatrixXd evecs = solver.eigenvectors();
    for (Eigen::Index k = evals.size() - 1; k >= 0; --k) {
        const double lambda = evals[k] / n;
        if (lambda <= kEigenvalueCutoff) break;
        // rescale so that N lambda (alpha . alpha) = 1
        const Eigen::VectorXd alpha = evecs.col(k) / std::sqrt(n * lambda);
        m.eigenpairs_.push_back({lambda, alpha});
    }
    if (m.eigenpairs_.empty()) {
        throw NumericalError("KernelModel: degenerate training set (no positive eigenvalues)");
    }

    if (retain < 0) {
        // smallest n capturing 99% of the positive spectrum
        double total = 0.0;
        for (const EigenPair& p : m.eigenpairs_) total += p.lambda;
        double acc = 0.0;
        int count = 0;
        for (const EigenPair& p : m.eigenpairs_) {
            acc += p.lambda;
            ++count;
            if (acc >= 0.99 * total) break;
        }
        m.retained_ = count;
    } else {
        if (retain < 1 || retain > static_cast<int>(m.eigenpairs_.size())) {
            throw ConfigError("KernelModel: retain must lie in [1, " +
                              std::to_string(m.eigenpairs_.size()) + "]");
        }
        m.retained_ = retain;
    }
    return m;
}

Eigen::VectorXd KernelModel::raw_eval(const Eigen::VectorXd& x) const {
    if (x.size() != dimension()) {
        throw StructuralError("KernelModel: evaluation point dimension mismatch");
    }
    Eigen::VectorXd k(size());
    for (int j = 0; j < size(); ++j) {
        k[j] = kernel_(x, training_set_[static_cast<std::size_t>(j)]);
    }
    return k;
}

Eigen::VectorXd KernelModel::centered_eval(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd k = raw_eval(x);
    const double row_mean = k.mean();
    return (k.array() - row_mean - column_means_.array() + grand_mean_).matrix();
}

double KernelModel::centered_diag(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd k = raw_eval(x);
    return kernel_(x, x) - 2.0 * k.mean() + grand_mean_;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd>
KernelModel::project_coefficients(const Eigen::VectorXd& x, int n) const {
    if (n < 0) n = retained_;
    if (n < 1 || n > static_cast<int>(eigenpairs_.size())) {
        throw StructuralError("project_coefficients: component count out of range");
    }
    const Eigen::VectorXd kc = centered_eval(x);
    Eigen::VectorXd beta(n);
    Eigen::VectorXd ell = Eigen::VectorXd::Zero(size());
    for (int k = 0; k < n; ++k) {
        beta[k] = eigenpairs_[static_cast<std::size_t>(k)].alpha.dot(kc);
        ell += beta[k] * eigenpairs_[static_cast<std::size_t>(k)].alpha;
    }
    return {std::move(beta), std::move(ell)};
}

double KernelModel::reconstruction_distance2(const Eigen::VectorXd& x, int n) const {
    const auto [beta, ell] = project_coefficients(x, n);
    (void)ell;
    return centered_diag(x) - beta.squaredNorm();
}

} // namespace qpath
