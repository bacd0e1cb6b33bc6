#include "qpath/preimage.hpp"

#include <cmath>

#include "qpath/errors.hpp"
#include "qpath/rng.hpp"

namespace qpath {

namespace {

constexpr double kDenominatorFloor = 1e-12;
constexpr double kProjectionFloor = 1e-12;
constexpr int kMaxRestarts = 3;
// grow-phi restart from an unregularized run needs a nonzero starting point
constexpr double kPhiSeedFraction = 1e-3;

} // namespace

std::string restart_policy_name(RestartPolicy p) {
    switch (p) {
    case RestartPolicy::None: return "none";
    case RestartPolicy::Perturb: return "perturb";
    case RestartPolicy::GrowPhi: return "grow-phi";
    }
    return "?";
}

RestartPolicy restart_policy_from_name(const std::string& name) {
    if (name == "none") return RestartPolicy::None;
    if (name == "perturb") return RestartPolicy::Perturb;
    if (name == "grow-phi") return RestartPolicy::GrowPhi;
    throw ConfigError("unknown restart policy '" + name + "'");
}

PreImageSolver::PreImageSolver(const KernelModel& model, Eigen::VectorXd y0, int components)
    : model_(&model), y0_(std::move(y0)),
      components_(components < 0 ? model.retained() : components) {
    if (y0_.size() != model.dimension()) {
        throw StructuralError("PreImageSolver: anchor dimension does not match training set");
    }
    auto [beta, ell] = model.project_coefficients(y0_, components_);
    beta_ = std::move(beta);
    ell_ = std::move(ell);
    // Reconstruction weights on plain kernel evaluations. The projected
    // feature vector is mean + sum_k beta_k V_k = sum_i gamma_i Gamma(Y_i)
    // with gamma_i = ell_i + (1 - sum_j ell_j)/N.
    const double n = static_cast<double>(model.size());
    gamma_ = ell_.array() + (1.0 - ell_.sum()) / n;
}

double PreImageSolver::distance(const Eigen::VectorXd& x, double phi) const {
    const Eigen::VectorXd k = model_->raw_eval(x);
    double d = model_->kernel()(x, x) - 2.0 * gamma_.dot(k);
    if (phi != 0.0) {
        d += phi * (x.squaredNorm() - 2.0 * x.dot(y0_));
    }
    return d;
}

Eigen::VectorXd PreImageSolver::gradient(const Eigen::VectorXd& x, double phi) const {
    Eigen::VectorXd g = model_->kernel().gradient_diag(x);
    for (int i = 0; i < model_->size(); ++i) {
        g -= 2.0 * gamma_[i] *
             model_->kernel().gradient_x(x, model_->training_set()[static_cast<std::size_t>(i)]);
    }
    if (phi != 0.0) {
        g += 2.0 * phi * (x - y0_);
    }
    return g;
}

double PreImageSolver::denominator(const Eigen::VectorXd& prev, double phi) const {
    return gamma_.dot(model_->raw_eval(prev)) + phi;
}

Eigen::VectorXd PreImageSolver::iterate_once(const Eigen::VectorXd& prev, double phi) const {
    const Eigen::VectorXd k = model_->raw_eval(prev);
    const double den = gamma_.dot(k) + phi;
    if (den <= kDenominatorFloor) {
        throw NumericalError("pre-image iteration: denominator collapse (" +
                             std::to_string(den) + ")");
    }
    Eigen::VectorXd num = phi * y0_;
    for (int i = 0; i < model_->size(); ++i) {
        num += gamma_[i] * k[i] * model_->training_set()[static_cast<std::size_t>(i)];
    }
    return num / den;
}

PreImageResult PreImageSolver::solve(const PreImageConfig& config) const {
    if (config.max_iterations < 1) {
        throw ConfigError("solve_preimage: max_iterations must be >= 1");
    }
    if (!(config.tol > 0.0) || !(config.phi >= 0.0) || !std::isfinite(config.phi)) {
        throw ConfigError("solve_preimage: tol must be > 0 and phi finite and >= 0");
    }
    if (beta_.lpNorm<Eigen::Infinity>() <= kProjectionFloor) {
        throw NumericalError("solve_preimage: projection of the anchor is numerically zero");
    }

    PreImageResult result;
    result.phi_used = config.phi;
    SeededRng rng(config.seed);

    double phi = config.phi;
    Eigen::VectorXd x = y0_;
    int restarts = 0;
    int r = 0;
    while (r < config.max_iterations) {
        Eigen::VectorXd k = model_->raw_eval(x);
        const double den = gamma_.dot(k) + phi;
        result.denominator_trace.push_back(den);
        if (den <= kDenominatorFloor) {
            if (restarts >= kMaxRestarts || config.restart == RestartPolicy::None) {
                result.solution = x;
                result.iterations_used = r;
                result.converged = false;
                result.restarts = restarts;
                result.phi_used = phi;
                result.gradient_norm_at_solution = gradient(x, phi).norm();
                return result;
            }
            ++restarts;
            switch (config.restart) {
            case RestartPolicy::Perturb:
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    x[i] += config.perturb_scale * rng.normal();
                }
                break;
            case RestartPolicy::GrowPhi:
                phi = phi > 0.0 ? phi * config.restart_factor
                                : kPhiSeedFraction * model_->max_abs_kernel();
                x = y0_;
                break;
            case RestartPolicy::None:
                break;
            }
            continue;
        }

        bool in_hull = phi == 0.0;
        if (in_hull) {
            for (int i = 0; i < model_->size(); ++i) {
                if (gamma_[i] * k[i] < 0.0) {
                    in_hull = false;
                    break;
                }
            }
        }

        Eigen::VectorXd num = phi * y0_;
        for (int i = 0; i < model_->size(); ++i) {
            num += gamma_[i] * k[i] * model_->training_set()[static_cast<std::size_t>(i)];
        }
        Eigen::VectorXd next = num / den;
        ++r;
        const double step = (next - x).norm();
        result.step_trace.push_back(step);
        result.distance_trace.push_back(distance(next, phi));
        result.in_hull_trace.push_back(in_hull);
        x = std::move(next);
        if (step <= config.tol) {
            result.converged = true;
            break;
        }
    }

    result.solution = x;
    result.iterations_used = r;
    result.restarts = restarts;
    result.phi_used = phi;
    result.gradient_norm_at_solution = gradient(x, phi).norm();
    return result;
}

ExtremumDiagnostic PreImageSolver::extremum_check(const PreImageResult& result, double phi) const {
    ExtremumDiagnostic diag;
    // sigma_i = ell_i K'(eps, Y_i), evaluated self-consistently from Y*.
    // The weighted mean is invariant to the common scale of K', so the
    // derivative factor enters only through its dependence on eps.
    Eigen::VectorXd eps = result.solution;
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(model_->size());
    for (int pass = 0; pass < 50; ++pass) {
        for (int i = 0; i < model_->size(); ++i) {
            sigma[i] = ell_[i] * model_->kernel().derivative(
                                     eps, model_->training_set()[static_cast<std::size_t>(i)]);
        }
        const double total = sigma.sum();
        if (std::abs(total) <= 1e-12) {
            diag.extremum = eps;
            diag.sigma_weights = sigma;
            diag.conclusive = false;
            diag.gradient_norm_at_extremum = gradient(eps, phi).norm();
            diag.distance_to_solution = (eps - result.solution).norm();
            return diag;
        }
        Eigen::VectorXd next = Eigen::VectorXd::Zero(eps.size());
        for (int i = 0; i < model_->size(); ++i) {
            next += sigma[i] * model_->training_set()[static_cast<std::size_t>(i)];
        }
        next /= total;
        const double step = (next - eps).norm();
        eps = std::move(next);
        if (step <= 1e-10 * (1.0 + eps.norm())) break;
    }
    diag.extremum = eps;
    diag.sigma_weights = sigma;
    diag.conclusive = true;
    diag.gradient_norm_at_extremum = gradient(eps, phi).norm();
    diag.distance_to_solution = (eps - result.solution).norm();
    return diag;
}

PreImageResult solve_preimage(const KernelModel& model, const Eigen::VectorXd& y0,
                              const PreImageConfig& config) {
    return PreImageSolver(model, y0, config.components).solve(config);
}

} // namespace qpath
