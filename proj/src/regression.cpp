#include "qpath/regression.hpp"

#include <cmath>

#include "qpath/errors.hpp"
#include "qpath/kernel.hpp"

namespace qpath {

namespace {

double max_fit_residual(const std::vector<TrainingSample>& samples, const Eigen::VectorXd& chi) {
    double worst = 0.0;
    for (const TrainingSample& s : samples) {
        worst = std::max(worst, std::abs(s.theta.dot(chi) - s.f));
    }
    return worst;
}

void check_samples(const std::vector<TrainingSample>& samples) {
    if (samples.empty()) {
        throw StructuralError("fit_chi: at least one sample required");
    }
    const Eigen::Index len = samples.front().theta.size();
    if (len == 0) {
        throw StructuralError("fit_chi: empty parameter vectors");
    }
    for (const TrainingSample& s : samples) {
        if (s.theta.size() != len) {
            throw StructuralError("fit_chi: inconsistent parameter vector lengths");
        }
        if (!s.theta.allFinite() || !std::isfinite(s.f)) {
            throw StructuralError("fit_chi: non-finite sample");
        }
    }
}

void check_chi(const Eigen::VectorXd& chi) {
    if (!chi.allFinite()) {
        throw NumericalError("fit_chi: non-finite coefficients");
    }
    if (chi.lpNorm<Eigen::Infinity>() == 0.0) {
        throw NumericalError("fit_chi: all-zero coefficient vector (target update undefined)");
    }
}

} // namespace

std::string fit_method_name(FitMethod m) {
    switch (m) {
    case FitMethod::MinNormSingle: return "min-norm-single";
    case FitMethod::LeastSquaresBatch: return "least-squares-batch";
    case FitMethod::KernelCoefficients: return "kernel-coefficients";
    }
    return "?";
}

FitMethod fit_method_from_name(const std::string& name) {
    if (name == "min-norm-single") return FitMethod::MinNormSingle;
    if (name == "least-squares-batch") return FitMethod::LeastSquaresBatch;
    if (name == "kernel-coefficients") return FitMethod::KernelCoefficients;
    throw ConfigError("unknown regression method '" + name + "'");
}

Eigen::RowVectorXd vector_pseudoinverse(const Eigen::VectorXd& chi) {
    const double n2 = chi.squaredNorm();
    if (n2 == 0.0) {
        throw NumericalError("vector_pseudoinverse: zero vector has no pseudoinverse scaling");
    }
    return chi.transpose() / n2;
}

RegressionModel fit_chi(const std::vector<TrainingSample>& samples, FitMethod method) {
    check_samples(samples);
    RegressionModel model;
    model.method = method;
    switch (method) {
    case FitMethod::MinNormSingle: {
        const TrainingSample& s = samples.front();
        const double n2 = s.theta.squaredNorm();
        if (n2 == 0.0) {
            throw NumericalError("fit_chi: theta0 = 0 leaves the single-sample fit degenerate");
        }
        model.chi = s.theta * (s.f / n2);
        model.rank = 1;
        model.provenance = "min-norm single-sample fit from 1 observation";
        break;
    }
    case FitMethod::LeastSquaresBatch: {
        const auto rows = static_cast<Eigen::Index>(samples.size());
        const Eigen::Index cols = samples.front().theta.size();
        Eigen::MatrixXd big_theta(rows, cols);
        Eigen::VectorXd f(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            big_theta.row(r) = samples[static_cast<std::size_t>(r)].theta.transpose();
            f[r] = samples[static_cast<std::size_t>(r)].f;
        }
        if (big_theta.lpNorm<Eigen::Infinity>() == 0.0) {
            throw NumericalError("fit_chi: all-zero design matrix");
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(big_theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
        model.chi = svd.solve(f); // minimum-norm least squares
        model.rank = static_cast<int>(svd.rank());
        model.provenance = "least-squares batch fit from " + std::to_string(samples.size()) +
                           " observations, rank " + std::to_string(model.rank);
        break;
    }
    case FitMethod::KernelCoefficients:
        throw ConfigError("fit_chi: kernel-coefficients requires a kernel model overload");
    }
    check_chi(model.chi);
    model.max_residual = max_fit_residual(samples, model.chi);
    return model;
}

RegressionModel fit_chi(const std::vector<TrainingSample>& samples, const KernelModel& model,
                        const Eigen::VectorXd& proxy_point) {
    check_samples(samples);
    const Eigen::Index len = samples.front().theta.size();
    if (len != model.size()) {
        throw ConfigError("fit_chi: kernel-coefficients needs parameter length L == training size "
                          "N (got L=" + std::to_string(len) + ", N=" +
                          std::to_string(model.size()) + ")");
    }
    // chi_j = sum_i alpha_i^j K~(proxy, Y_i) = beta_j at the proxy point.
    // j runs over the positive spectrum; the centered Gram matrix has rank
    // at most N-1, so trailing components are zero.
    const auto [beta, ell] = model.project_coefficients(proxy_point,
                                                        static_cast<int>(model.eigenpairs().size()));
    (void)ell;
    RegressionModel out;
    out.method = FitMethod::KernelCoefficients;
    out.chi = Eigen::VectorXd::Zero(len);
    out.chi.head(beta.size()) = beta;
    out.rank = static_cast<int>(beta.size());
    out.provenance = "kernel coefficients evaluated at the anchor element as proxy for the "
                     "unknown target; " + std::to_string(beta.size()) + " of " +
                     std::to_string(len) + " components from the positive spectrum";
    check_chi(out.chi);
    out.max_residual = max_fit_residual(samples, out.chi);
    return out;
}

ThetaDecomposition decompose_theta(const Eigen::VectorXd& theta0, const RegressionModel& model,
                                   double f0) {
    if (theta0.size() != model.chi.size()) {
        throw StructuralError("decompose_theta: theta0 length does not match model");
    }
    const Eigen::RowVectorXd pinv = vector_pseudoinverse(model.chi);
    ThetaDecomposition d;
    d.f_component = pinv.transpose() * f0;
    d.null_component = theta0 - d.f_component;
    return d;
}

Eigen::VectorXd target_theta(const Eigen::VectorXd& theta0, const RegressionModel& model,
                             double f0, double f_star) {
    if (theta0.size() != model.chi.size()) {
        throw StructuralError("target_theta: theta0 length does not match model");
    }
    const Eigen::RowVectorXd pinv = vector_pseudoinverse(model.chi);
    return theta0 + pinv.transpose() * (f_star - f0);
}

} // namespace qpath
