// Acceptance suite: every release criterion with its tolerance pinned in
// code. Each criterion prints one pass/fail line; the process exit code is
// the number of failed criteria. Criteria 11 and 12 drive the CLI binary,
// whose path arrives as argv[1].
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qpath/harness.hpp"
#include "qpath/report.hpp"
#include "qpath/validate.hpp"

using namespace qpath;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] C%02d %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// C1: simulator vs dense-matrix brute force, 200 random circuits, <= 5 s.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    SeededRng rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int qubits = 1 + static_cast<int>(rng.below(3));
        const int gates = 1 + static_cast<int>(rng.below(6));
        const GateSequence seq = oracles::random_sequence(rng, qubits, gates);
        const Eigen::VectorXd theta = oracles::random_vector(rng, gates, -3.0, 3.0);
        const StateVector input = oracles::random_state(rng, qubits);
        const StateVector got = build_state(seq, theta, input);
        const Eigen::VectorXcd want = oracles::simulate_dense(seq, theta, input.amplitudes());
        worst = std::max(worst, (got.amplitudes() - want).lpNorm<Eigen::Infinity>());
    }
    const double elapsed = seconds_since(start);
    report(1, "simulator oracle equivalence", worst <= 1e-10 && elapsed <= 5.0,
           "max amplitude error " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// C2: norm preservation over 1000 random circuits.
void criterion_2() {
    SeededRng rng(102);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int qubits = 1 + static_cast<int>(rng.below(10));
        const int gates = 1 + static_cast<int>(rng.below(20));
        const GateSequence seq = oracles::random_sequence(rng, qubits, gates);
        const StateVector out =
            build_state(seq, oracles::random_vector(rng, gates, -3.0, 3.0));
        worst = std::max(worst, std::abs(out.norm() - 1.0));
    }
    report(2, "norm preservation", worst <= 1e-10, "max |norm - 1| " + fmt(worst));
}

// C3: pathway additivity on 100 random states over ring and random graphs.
void criterion_3() {
    SeededRng rng(103);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const bool ring = trial % 2 == 0;
        const int size = 3 + static_cast<int>(rng.below(10)); // up to 12 vertices
        const Instance inst = generate_instance(
            ring ? InstanceKind::MaxcutRing : InstanceKind::MaxcutRandom, size, 500 + trial);
        const StateVector state = oracles::random_state(rng, size);
        const double f = objective_value(state, inst.objective);
        const Eigen::VectorXd omega = decompose_objective(state, inst.objective);
        worst = std::max(worst, std::abs(omega.sum() - f));
    }
    report(3, "pathway additivity", worst <= 1e-10, "max |sum(omega) - f| " + fmt(worst));
}

// C4: Algorithm 1 algebraic contract over 100 random fits.
void criterion_4() {
    SeededRng rng(104);
    double worst_complete = 0.0, worst_null = 0.0, worst_target = 0.0, worst_sine = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int len = 2 + static_cast<int>(rng.below(10));
        RegressionModel model;
        Eigen::VectorXd theta0;
        double f0 = 0.0;
        if (trial % 2 == 0) {
            // min-norm single-sample fit (residual 0 by construction)
            theta0 = oracles::random_vector(rng, len, -2.0, 2.0);
            if (theta0.norm() < 1e-9) theta0[0] = 1.0;
            f0 = rng.uniform(0.1, 2.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
            model = fit_chi({TrainingSample{theta0, f0}}, FitMethod::MinNormSingle);
        } else {
            // batch fit on exactly linear data
            const Eigen::VectorXd truth = oracles::random_vector(rng, len, -1.0, 1.0);
            std::vector<TrainingSample> samples;
            for (int i = 0; i < len + 3; ++i) {
                const Eigen::VectorXd theta = oracles::random_vector(rng, len, -2.0, 2.0);
                samples.push_back({theta, theta.dot(truth)});
            }
            model = fit_chi(samples, FitMethod::LeastSquaresBatch);
            theta0 = oracles::random_vector(rng, len, -2.0, 2.0);
            f0 = theta0.dot(model.chi);
        }
        const ThetaDecomposition d = decompose_theta(theta0, model, f0);
        worst_complete = std::max(
            worst_complete, (d.f_component + d.null_component - theta0).lpNorm<Eigen::Infinity>());
        worst_null = std::max(worst_null, std::abs(model.chi.dot(d.null_component)));
        const double f_star = f0 + rng.uniform(-1.5, 1.5);
        const Eigen::VectorXd theta_star = target_theta(theta0, model, f0, f_star);
        worst_target = std::max(worst_target, std::abs(model.chi.dot(theta_star) - f_star));
        const Eigen::VectorXd update = theta_star - theta0;
        if (update.norm() > 1e-12) {
            const Eigen::VectorXd unit = model.chi.normalized();
            worst_sine = std::max(
                worst_sine, (update - update.dot(unit) * unit).norm() / update.norm());
        }
    }
    const bool pass = worst_complete <= 1e-12 && worst_null <= 1e-10 &&
                      worst_target <= 1e-10 && worst_sine <= 1e-10;
    report(4, "target-state algebraic contract", pass,
           "completeness " + fmt(worst_complete) + ", null " + fmt(worst_null) + ", target " +
               fmt(worst_target) + ", sine " + fmt(worst_sine));
}

// C5: local-linearity ratio test on the 2-vertex ring.
void criterion_5() {
    RunConfig cfg;
    cfg.instance.kind = InstanceKind::MaxcutRing;
    cfg.instance.size = 2;
    cfg.instance.layers = 1;
    cfg.training.count = 24;
    cfg.training.distribution = "cluster";
    cfg.training.radius = 0.05;
    cfg.training.seed = 55;
    cfg.run.theta0 = "values";
    cfg.run.theta0_values = {0.45, 0.35, 0.55};
    cfg.run.ratio_steps = {0.04, 0.02, 0.01};
    const Instance inst = make_instance(cfg.instance);
    const Eigen::VectorXd theta0 = make_theta0(cfg.run, inst.circuit.parameter_count());
    const TrainingSet training = sample_training_set(inst, cfg.training, theta0);
    const std::vector<RatioRow> rows = run_ratio_sweep(inst, training, cfg);
    double lo = 1e300, hi = 0.0;
    std::string detail;
    for (const RatioRow& r : rows) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        detail += fmt(r.ratio) + " ";
    }
    report(5, "local-linearity ratio bounded", rows.size() == 3 && hi / lo <= 10.0,
           "ratios " + detail + "max/min " + fmt(hi / lo));
}

// C6: kernel centering and eigenproblem over 50 random training sets.
void criterion_6() {
    SeededRng rng(106);
    double worst_sum = 0.0, worst_residual_rel = 0.0, worst_trace = 0.0;
    for (int set = 0; set < 50; ++set) {
        const int n = 5 + static_cast<int>(rng.below(96)); // up to 100
        const int dim = 2 + static_cast<int>(rng.below(19)); // up to 20
        std::vector<Eigen::VectorXd> points;
        points.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            points.push_back(oracles::random_vector(rng, dim, -1.0, 1.0));
        }
        const KernelModel model =
            KernelModel::fit(points, KernelFunction::rbf(median_pairwise_distance(points)));
        worst_sum = std::max(
            worst_sum, model.centered_matrix().rowwise().sum().lpNorm<Eigen::Infinity>());
        const double scale = n * model.eigenpairs().front().lambda;
        double trace_sum = 0.0;
        for (const EigenPair& p : model.eigenpairs()) {
            const double res =
                (model.centered_matrix() * p.alpha - n * p.lambda * p.alpha).norm();
            worst_residual_rel = std::max(worst_residual_rel, res / scale);
            trace_sum += n * p.lambda;
        }
        worst_trace =
            std::max(worst_trace, std::abs(trace_sum - model.centered_matrix().trace()));
    }
    const bool pass =
        worst_sum <= 1e-9 && worst_residual_rel <= 1e-8 && worst_trace <= 1e-8;
    report(6, "kernel centering and eigenproblem", pass,
           "row sums " + fmt(worst_sum) + ", residual/scale " + fmt(worst_residual_rel) +
               ", trace " + fmt(worst_trace));
}

// C7: kernel-PCA reconstruction of training points with all components.
void criterion_7() {
    SeededRng rng(107);
    double worst = 0.0;
    for (int set = 0; set < 10; ++set) {
        const int n = 10 + static_cast<int>(rng.below(41)); // up to 50
        const int dim = 2 + static_cast<int>(rng.below(6));
        std::vector<Eigen::VectorXd> points;
        for (int i = 0; i < n; ++i) {
            points.push_back(oracles::random_vector(rng, dim, -1.0, 1.0));
        }
        const KernelModel model =
            KernelModel::fit(points, KernelFunction::rbf(median_pairwise_distance(points)));
        const int all = static_cast<int>(model.eigenpairs().size());
        for (const Eigen::VectorXd& p : points) {
            worst = std::max(worst, model.reconstruction_distance2(p, all));
        }
    }
    report(7, "kernel-PCA training reconstruction", worst <= 1e-8,
           "max feature distance^2 " + fmt(worst));
}

// C8: pre-image vs dense grid search over 20 synthetic 2-D cluster instances.
void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    SeededRng rng(108);
    int converged = 0, agreed = 0;
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const Eigen::Vector2d center(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
        std::vector<Eigen::VectorXd> points;
        for (int i = 0; i < 15; ++i) {
            Eigen::VectorXd p(2);
            p << center[0] + 0.15 * rng.normal(), center[1] + 0.15 * rng.normal();
            points.push_back(std::move(p));
        }
        const KernelModel model =
            KernelModel::fit(points, KernelFunction::rbf(median_pairwise_distance(points)));
        Eigen::VectorXd y0 = points[static_cast<std::size_t>(rng.below(15))];
        y0[0] += 0.05 * rng.normal();
        y0[1] += 0.05 * rng.normal();
        PreImageConfig cfg;
        cfg.phi = 0.0;
        const PreImageSolver solver(model, y0, -1);
        const PreImageResult result = solver.solve(cfg);
        if (!result.converged) continue;
        ++converged;
        // dense 400x400 grid over the data bounding box +- 20%
        Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
        for (const Eigen::VectorXd& p : points) {
            lo = lo.cwiseMin(Eigen::Vector2d(p[0], p[1]));
            hi = hi.cwiseMax(Eigen::Vector2d(p[0], p[1]));
        }
        const Eigen::Vector2d pad = 0.2 * (hi - lo);
        lo -= pad;
        hi += pad;
        double best = 1e300;
        Eigen::Vector2d arg = lo;
        Eigen::VectorXd x(2);
        for (int ix = 0; ix < 400; ++ix) {
            for (int iy = 0; iy < 400; ++iy) {
                x[0] = lo[0] + (hi[0] - lo[0]) * ix / 399.0;
                x[1] = lo[1] + (hi[1] - lo[1]) * iy / 399.0;
                const double d = solver.distance(x, 0.0);
                if (d < best) {
                    best = d;
                    arg = x;
                }
            }
        }
        const double dev = (result.solution - Eigen::VectorXd(arg)).norm();
        worst = std::max(worst, dev);
        if (dev <= 1e-2) ++agreed;
    }
    const double elapsed = seconds_since(start);
    const bool pass =
        converged >= 15 && agreed == converged && elapsed <= 60.0; // <25% non-convergent
    report(8, "pre-image grid-search equivalence", pass,
           std::to_string(converged) + "/20 converged, max deviation " + fmt(worst) + ", " +
               fmt(elapsed) + " s");
}

// C9: analytic gradient vs central finite differences, 100 points over 10 models.
void criterion_9() {
    SeededRng rng(109);
    double worst = 0.0;
    for (int m = 0; m < 10; ++m) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        std::vector<Eigen::VectorXd> points;
        for (int i = 0; i < 12; ++i) {
            points.push_back(oracles::random_vector(rng, dim, -1.0, 1.0));
        }
        const KernelModel model =
            m % 3 == 2
                ? KernelModel::fit(points, KernelFunction::polynomial(2, 1.0))
                : KernelModel::fit(points,
                                   KernelFunction::rbf(median_pairwise_distance(points)));
        const Eigen::VectorXd y0 = points.front();
        const PreImageSolver solver(model, y0, -1);
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::VectorXd x =
                points[static_cast<std::size_t>(rng.below(12))] +
                0.3 * oracles::random_vector(rng, dim, -1.0, 1.0);
            const double phi = trial % 2 == 0 ? 0.0 : rng.uniform(0.1, 1.0);
            const Eigen::VectorXd g = solver.gradient(x, phi);
            Eigen::VectorXd fd(dim);
            const double h = 1e-6;
            for (int d = 0; d < dim; ++d) {
                Eigen::VectorXd xp = x, xm = x;
                xp[d] += h;
                xm[d] -= h;
                fd[d] = (solver.distance(xp, phi) - solver.distance(xm, phi)) / (2.0 * h);
            }
            worst = std::max(worst, (g - fd).norm() / std::max(1e-12, fd.norm()));
        }
    }
    report(9, "gradient finite-difference agreement", worst <= 1e-5,
           "max relative deviation " + fmt(worst));
}

// C10: regularizer limit over 10 instances.
void criterion_10() {
    SeededRng rng(110);
    bool decreasing = true;
    double worst_final = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        std::vector<Eigen::VectorXd> points;
        const Eigen::Vector2d center(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
        for (int i = 0; i < 12; ++i) {
            Eigen::VectorXd p(2);
            p << center[0] + 0.05 * rng.normal(), center[1] + 0.05 * rng.normal();
            points.push_back(std::move(p));
        }
        const KernelModel model =
            KernelModel::fit(points, KernelFunction::rbf(median_pairwise_distance(points)));
        const Eigen::VectorXd y0 = points.front();
        PreImageConfig cfg;
        cfg.phi = 1e3 * model.max_abs_kernel();
        const double d3 = (solve_preimage(model, y0, cfg).solution - y0).norm();
        cfg.phi = 1e6 * model.max_abs_kernel();
        const double d6 = (solve_preimage(model, y0, cfg).solution - y0).norm();
        decreasing = decreasing && d6 < d3;
        worst_final = std::max(worst_final, d6);
    }
    report(10, "regularizer limit", decreasing && worst_final <= 1e-6,
           "max ||Y*-Y0|| at phi=1e6: " + fmt(worst_final));
}

nlohmann::json write_desk_config(const std::filesystem::path& path) {
    nlohmann::json cfg = {
        {"schema", 1},
        {"instance",
         {{"kind", "maxcut-ring"}, {"size", 4}, {"seed", 11}, {"layers", 1}}},
        {"training", {{"count", 100}, {"seed", 12}}},
        {"regression", {{"method", "least-squares-batch"}}},
        {"kernel", {{"kind", "rbf"}, {"sigma", "auto"}, {"retain", "auto"}}},
        {"preimage", {{"phi", 0.0}, {"max_iterations", 500}, {"tol", 1e-8}}},
        {"run", {{"theta0", "zero"}, {"f_star_mode", "relative"}, {"f_star", 0.25}}},
        {"output", {{"format", "both"}}}};
    std::ofstream out(path);
    out << cfg.dump(2);
    return cfg;
}

bool report_is_schema_valid(const std::filesystem::path& path, std::string* why) {
    std::ifstream in(path);
    if (!in) {
        *why = "report.json missing";
        return false;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        *why = std::string("report.json unparsable: ") + e.what();
        return false;
    }
    const char* top[] = {"schema", "config", "instance", "state_determination", "pathway"};
    for (const char* key : top) {
        if (!j.contains(key)) {
            *why = std::string("missing key ") + key;
            return false;
        }
    }
    if (j.at("schema").get<int>() != 1) {
        *why = "schema != 1";
        return false;
    }
    const char* state_keys[] = {"theta0", "f0", "f_star", "chi", "theta_star",
                                "identity_residual", "f_sim_theta_star", "gap"};
    for (const char* key : state_keys) {
        if (!j.at("state_determination").contains(key)) {
            *why = std::string("state_determination missing ") + key;
            return false;
        }
    }
    const char* path_keys[] = {"upsilon0", "preimage", "decoded", "max_edge_deviation"};
    for (const char* key : path_keys) {
        if (!j.at("pathway").contains(key)) {
            *why = std::string("pathway missing ") + key;
            return false;
        }
    }
    return true;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// C11 + C12: CLI end-to-end run, schema-valid report, passing validation,
// byte-identical reruns.
void criteria_11_12(const std::string& cli) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qpath_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path config_path = dir / "config.json";
    write_desk_config(config_path);
    const fs::path out_dir = dir / "out";

    const auto start = std::chrono::steady_clock::now();
    const std::string cmd = "'" + cli + "' full --config '" + config_path.string() +
                            "' --out '" + out_dir.string() + "' --quiet";
    const int rc_full = std::system(cmd.c_str());
    const double full_elapsed = seconds_since(start);

    std::string why;
    const bool schema_ok = report_is_schema_valid(out_dir / "report.json", &why);

    const std::string validate_cmd =
        "'" + cli + "' validate --config '" + config_path.string() + "' > '" +
        (dir / "validate.log").string() + "'";
    const int rc_validate = std::system(validate_cmd.c_str());

    const bool pass11 =
        rc_full == 0 && full_elapsed <= 30.0 && schema_ok && rc_validate == 0;
    report(11, "end-to-end desk run", pass11,
           "full rc=" + std::to_string(rc_full) + ", " + fmt(full_elapsed) + " s, " +
               (schema_ok ? "schema ok" : why) + ", validate rc=" +
               std::to_string(rc_validate));

    const std::string first = read_file(out_dir / "report.json");
    const int rc_again = std::system(cmd.c_str());
    const std::string second = read_file(out_dir / "report.json");
    const bool pass12 = rc_again == 0 && !first.empty() && first == second;
    report(12, "byte-identical determinism", pass12,
           pass12 ? std::to_string(first.size()) + " bytes equal"
                  : "reports differ or rerun failed");
    fs::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: qpath_acceptance <path-to-qpath-cli>\n";
        return 64;
    }
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criteria_11_12(argv[1]);
    if (failures == 0) {
        std::printf("acceptance: all 12 criteria hold\n");
    } else {
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    }
    return failures;
}
