#include "qpath/validate.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qpath/harness.hpp"
#include "qpath/rng.hpp"

namespace qpath {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

Eigen::VectorXd random_theta(SeededRng& rng, int len, double lo = 0.0, double hi = 6.2831853) {
    Eigen::VectorXd t(len);
    for (int i = 0; i < len; ++i) t[i] = rng.uniform(lo, hi);
    return t;
}

PauliString random_pauli(SeededRng& rng, int qubits) {
    std::vector<Pauli> ops(static_cast<std::size_t>(qubits), Pauli::I);
    bool nontrivial = false;
    for (int q = 0; q < qubits; ++q) {
        switch (rng.below(4)) {
        case 1: ops[static_cast<std::size_t>(q)] = Pauli::X; nontrivial = true; break;
        case 2: ops[static_cast<std::size_t>(q)] = Pauli::Y; nontrivial = true; break;
        case 3: ops[static_cast<std::size_t>(q)] = Pauli::Z; nontrivial = true; break;
        default: break;
        }
    }
    if (!nontrivial) ops[0] = Pauli::X;
    return PauliString(std::move(ops));
}

} // namespace

std::string ValidationResult::transcript() const {
    std::ostringstream os;
    for (const ValidationRow& row : rows) {
        os << (row.pass ? "[PASS] " : "[FAIL] ") << row.name;
        if (!row.detail.empty()) os << " — " << row.detail;
        os << '\n';
    }
    os << (all_pass ? "validation: all invariants hold\n" : "validation: FAILURES present\n");
    return os.str();
}

ValidationResult validate(const RunConfig& cfg, const ValidationOptions& options) {
    ValidationResult result;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        result.rows.push_back({name, pass, detail});
        if (!pass) result.all_pass = false;
    };

    SeededRng rng(cfg.training.seed);

    // --- simulator invariants -------------------------------------------
    {
        double worst = 0.0;
        for (int trial = 0; trial < 40; ++trial) {
            const int qubits = 1 + static_cast<int>(rng.below(5));
            const int gates = 1 + static_cast<int>(rng.below(10));
            std::vector<GateSpec> specs;
            for (int g = 0; g < gates; ++g) {
                specs.push_back({random_pauli(rng, qubits), g});
            }
            GateSequence seq(qubits, std::move(specs), gates);
            const StateVector out = build_state(seq, random_theta(rng, gates));
            worst = std::max(worst, std::abs(out.norm() - 1.0));
        }
        check("simulator.norm_preservation", worst <= 1e-10, "max |norm-1| " + fmt(worst));
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int qubits = 1 + static_cast<int>(rng.below(3));
            const PauliString p = random_pauli(rng, qubits);
            const double a = rng.uniform(-3.0, 3.0);
            const double b = rng.uniform(-3.0, 3.0);
            StateVector s = StateVector::zero_state(qubits);
            s = apply_pauli_rotation(apply_pauli_rotation(s, p, a), p, b);
            const StateVector direct =
                apply_pauli_rotation(StateVector::zero_state(qubits), p, a + b);
            worst = std::max(worst,
                             (s.amplitudes() - direct.amplitudes()).lpNorm<Eigen::Infinity>());
        }
        check("simulator.rotation_composition", worst <= 1e-10, "max deviation " + fmt(worst));
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int qubits = 1 + static_cast<int>(rng.below(3));
            const PauliString p = random_pauli(rng, qubits);
            const double a = rng.uniform(-3.0, 3.0);
            const StateVector in = StateVector::zero_state(qubits);
            const StateVector round =
                apply_pauli_rotation(apply_pauli_rotation(in, p, a), p, -a);
            worst = std::max(worst,
                             (round.amplitudes() - in.amplitudes()).lpNorm<Eigen::Infinity>());
        }
        check("simulator.rotation_inverse", worst <= 1e-10, "max deviation " + fmt(worst));
    }

    // --- pathway invariants ----------------------------------------------
    Instance instance = make_instance(cfg.instance);
    {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::VectorXd theta =
                random_theta(rng, instance.circuit.parameter_count());
            const StateVector state = build_state(instance.circuit, theta);
            const double f = objective_value(state, instance.objective);
            const Eigen::VectorXd omega = decompose_objective(state, instance.objective);
            worst = std::max(worst, std::abs(omega.sum() - f));
        }
        check("pathway.additivity", worst <= 1e-10, "max |sum(omega)-f| " + fmt(worst));
    }
    {
        Eigen::VectorXd omega(instance.graph.edge_count());
        for (int e = 0; e < omega.size(); ++e) omega[e] = rng.uniform(0.0, 1.0);
        const PathwayElement elem = encode_element(instance.graph, omega);
        const DecodeReport decoded = decode_element(elem);
        bool ok = decoded.max_deviation == 0.0 && decoded.flagged.empty();
        for (int e = 0; e < omega.size(); ++e) {
            ok = ok && decoded.edge_indices[static_cast<std::size_t>(e)] == e &&
                 decoded.omega[e] == omega[e];
        }
        check("pathway.encode_decode_roundtrip", ok, "");
    }

    // --- regression invariants --------------------------------------------
    {
        double worst_complete = 0.0, worst_null = 0.0, worst_target = 0.0, worst_sine = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            const int len = 2 + static_cast<int>(rng.below(6));
            Eigen::VectorXd theta0 = random_theta(rng, len, -2.0, 2.0);
            if (theta0.norm() < 1e-6) theta0[0] = 1.0;
            const double f0 = rng.uniform(-2.0, 2.0);
            if (f0 == 0.0) continue;
            const RegressionModel model =
                fit_chi({TrainingSample{theta0, f0}}, FitMethod::MinNormSingle);
            const ThetaDecomposition d = decompose_theta(theta0, model, f0);
            worst_complete = std::max(
                worst_complete,
                (d.f_component + d.null_component - theta0).lpNorm<Eigen::Infinity>());
            worst_null = std::max(worst_null, std::abs(model.chi.dot(d.null_component)));
            const double f_star = f0 + rng.uniform(-1.0, 1.0);
            const Eigen::VectorXd theta_star = target_theta(theta0, model, f0, f_star);
            worst_target = std::max(worst_target,
                                    std::abs(model.chi.dot(theta_star) - f_star));
            const Eigen::VectorXd update = theta_star - theta0;
            if (update.norm() > 1e-12) {
                const Eigen::VectorXd unit = model.chi.normalized();
                const double sine = (update - update.dot(unit) * unit).norm() / update.norm();
                worst_sine = std::max(worst_sine, sine);
            }
        }
        check("regression.decomposition_complete", worst_complete <= 1e-12, fmt(worst_complete));
        check("regression.null_orthogonal", worst_null <= 1e-10, fmt(worst_null));
        check("regression.target_identity", worst_target <= 1e-10, fmt(worst_target));
        check("regression.update_parallel_chi", worst_sine <= 1e-10, fmt(worst_sine));
    }
    {
        const int len = 4;
        Eigen::VectorXd chi = random_theta(rng, len, -1.0, 1.0);
        if (chi.norm() < 1e-6) chi[0] = 1.0;
        const Eigen::RowVectorXd pinv = vector_pseudoinverse(chi);
        const double e1 = (chi * (pinv * chi) - chi).lpNorm<Eigen::Infinity>();
        const double e2 = (pinv * chi * pinv - pinv).lpNorm<Eigen::Infinity>();
        const Eigen::MatrixXd proj = chi * pinv;
        const double e3 = (proj - proj.transpose()).lpNorm<Eigen::Infinity>();
        const double worst = std::max({e1, e2, e3});
        check("regression.pseudoinverse_identities", worst <= 1e-12, fmt(worst));
    }

    // --- kernel invariants --------------------------------------------------
    const Eigen::VectorXd theta0 = make_theta0(cfg.run, instance.circuit.parameter_count());
    TrainingConfig small_training = cfg.training;
    small_training.count = std::min(cfg.training.count, 40);
    const TrainingSet training = sample_training_set(instance, small_training, theta0);
    KernelModel model = KernelModel::fit(training.upsilon,
                                         make_kernel(cfg.kernel, training.upsilon),
                                         cfg.kernel.retain);
    {
        Eigen::MatrixXd centered = model.centered_matrix();
        if (options.corrupt_centering) {
            centered(0, 0) += 1e-3; // negative-control hook
        }
        const double row = centered.rowwise().sum().lpNorm<Eigen::Infinity>();
        const double col = centered.colwise().sum().lpNorm<Eigen::Infinity>();
        check("kernel.centering_zero_sums", std::max(row, col) <= 1e-9,
              "max |row/col sum| " + fmt(std::max(row, col)));
        const Eigen::MatrixXd twice = center_kernel_matrix(model.centered_matrix());
        const double idem = (twice - model.centered_matrix()).lpNorm<Eigen::Infinity>();
        check("kernel.centering_idempotent", idem <= 1e-12, fmt(idem));
    }
    {
        const double n = model.size();
        double worst_residual = 0.0, worst_norm = 0.0;
        const double scale = n * model.eigenpairs().front().lambda;
        for (const EigenPair& p : model.eigenpairs()) {
            const double res =
                (model.centered_matrix() * p.alpha - n * p.lambda * p.alpha).norm();
            worst_residual = std::max(worst_residual, res);
            worst_norm =
                std::max(worst_norm, std::abs(n * p.lambda * p.alpha.squaredNorm() - 1.0));
        }
        check("kernel.eigen_residual", worst_residual <= 1e-8 * scale,
              fmt(worst_residual) + " vs bound " + fmt(1e-8 * scale));
        check("kernel.eigen_normalization", worst_norm <= 1e-10, fmt(worst_norm));
        double trace_sum = 0.0;
        for (const EigenPair& p : model.eigenpairs()) trace_sum += n * p.lambda;
        const double trace_err = std::abs(trace_sum - model.centered_matrix().trace());
        check("kernel.trace_identity", trace_err <= 1e-8, fmt(trace_err));
    }
    {
        double worst = 0.0;
        const int all = static_cast<int>(model.eigenpairs().size());
        for (int i = 0; i < std::min(5, model.size()); ++i) {
            worst = std::max(worst, model.reconstruction_distance2(
                                        training.upsilon[static_cast<std::size_t>(i)], all));
        }
        check("kernel.training_reconstruction", worst <= 1e-8,
              "max feature distance^2 " + fmt(worst));
    }

    // --- pre-image invariants ----------------------------------------------
    {
        PreImageSolver solver(model, training.upsilon.front(), -1);
        PreImageConfig pconf = cfg.preimage;
        pconf.phi = 0.0;
        const PreImageResult run = solver.solve(pconf);
        bool fixed_ok = true;
        double fixed_dev = 0.0;
        if (run.converged) {
            fixed_dev = (solver.iterate_once(run.solution, run.phi_used) - run.solution).norm();
            fixed_ok = fixed_dev <= pconf.tol;
        }
        check("preimage.fixed_point_consistency", fixed_ok,
              run.converged ? fmt(fixed_dev) : "not converged (skipped)");

        // gradient vs central finite differences
        Eigen::VectorXd x = training.upsilon.front();
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += 0.01 * rng.normal();
        const Eigen::VectorXd g = solver.gradient(x, 0.5);
        Eigen::VectorXd fd(x.size());
        const double h = 1e-6;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            Eigen::VectorXd xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            fd[i] = (solver.distance(xp, 0.5) - solver.distance(xm, 0.5)) / (2.0 * h);
        }
        const double rel = (g - fd).norm() / std::max(1e-12, fd.norm());
        check("preimage.gradient_matches_fd", rel <= 1e-5, "relative deviation " + fmt(rel));

        // regularizer limit
        const double base = model.max_abs_kernel();
        PreImageConfig big = pconf;
        big.phi = 1e3 * base;
        const double d3 = (solver.solve(big).solution - training.upsilon.front()).norm();
        big.phi = 1e6 * base;
        const double d6 = (solver.solve(big).solution - training.upsilon.front()).norm();
        check("preimage.regularizer_limit", d6 < d3, fmt(d3) + " -> " + fmt(d6));
    }

    // --- harness determinism -------------------------------------------------
    {
        const TrainingSet again = sample_training_set(instance, small_training, theta0);
        bool same = again.samples.size() == training.samples.size();
        for (std::size_t i = 0; same && i < again.samples.size(); ++i) {
            same = again.samples[i].theta == training.samples[i].theta &&
                   again.samples[i].f == training.samples[i].f;
        }
        check("harness.sampling_deterministic", same, "");
    }

    return result;
}

} // namespace qpath
