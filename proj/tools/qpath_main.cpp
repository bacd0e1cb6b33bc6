#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"
#include "qpath/harness.hpp"
#include "qpath/report.hpp"
#include "qpath/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path, "run configuration JSON");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--format", args.format, "report format: json|csv|both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    cmd->add_option("--seed", args.seed, "master seed overriding every config seed");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

qpath::RunConfig resolve_config(const CommonArgs& args) {
    qpath::RunConfig cfg =
        args.config_path.empty() ? qpath::RunConfig{} : qpath::RunConfig::load(args.config_path);
    if (!args.out_dir.empty()) cfg.output.dir = args.out_dir;
    if (!args.format.empty()) cfg.output.format = args.format;
    if (args.seed) cfg.override_seeds(*args.seed);
    if (args.quiet) cfg.output.quiet = true;
    return cfg;
}

void print_summary(const qpath::RunReport& report, const qpath::StageTimings& timings,
                   bool quiet) {
    if (quiet) return;
    const qpath::StateDetermination& s = report.state;
    std::cout << "f0 = " << s.f0 << ", f* = " << s.f_star
              << ", chi.theta* = " << s.chi_dot_theta_star
              << ", identity residual = " << s.identity_residual << '\n';
    std::cout << "f_sim(theta*) = " << s.f_sim_theta_star << ", gap |f_sim - f*| = " << s.gap
              << '\n';
    if (report.pathway) {
        const qpath::PathwayRun& p = *report.pathway;
        std::cout << "pre-image: " << (p.preimage.converged ? "converged" : "NOT converged")
                  << " in " << p.preimage.iterations_used << " iterations, C* = "
                  << p.decoded.total << ", max edge deviation = " << p.max_edge_deviation
                  << '\n';
    }
    std::cerr << "run completed in " << timings.total_ms << " ms, report in '"
              << report.config.output.dir << "'\n";
}

int run_mode(const CommonArgs& args, bool with_pathway, bool with_ratio) {
    qpath::RunConfig cfg = resolve_config(args);
    qpath::StageTimings timings;
    qpath::RunReport report = with_pathway ? qpath::run_full(cfg, &timings, with_ratio)
                                           : qpath::run_determine_state(cfg, &timings);
    qpath::emit_report(report, cfg.output.dir, cfg.output.format, timings);
    print_summary(report, timings, cfg.output.quiet);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"state determination and computational pathway recovery for simulated "
                 "gate-model quantum circuits"};
    app.require_subcommand(1);

    CommonArgs determine_args, pathway_args, full_args, validate_args;
    auto* determine =
        app.add_subcommand("determine-state", "fit chi and compute theta* for a target f*");
    add_common(determine, determine_args, true);
    auto* pathway =
        app.add_subcommand("pathway", "recover the per-edge pathway of the target state");
    add_common(pathway, pathway_args, true);
    auto* full = app.add_subcommand("full", "run state determination and pathway recovery");
    add_common(full, full_args, true);
    auto* validate_cmd =
        app.add_subcommand("validate", "run the invariant suite and print a pass/fail table");
    add_common(validate_cmd, validate_args, false);

    auto* gen = app.add_subcommand("gen-instance", "generate a problem instance file");
    std::string gen_kind = "maxcut-ring";
    int gen_size = 4;
    std::uint64_t gen_seed = 11;
    int gen_layers = 1;
    bool gen_shared = false;
    std::string gen_out;
    bool gen_quiet = false;
    gen->add_option("--kind", gen_kind, "maxcut-ring | maxcut-random")
        ->check(CLI::IsMember({"maxcut-ring", "maxcut-random"}));
    gen->add_option("--size", gen_size, "vertex count, 2..14");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--layers", gen_layers, "ansatz layers");
    gen->add_flag("--shared-parameters", gen_shared,
                  "share one angle per layer stage instead of per-gate parameters");
    gen->add_option("--out", gen_out, "instance JSON path")->required();
    gen->add_flag("--quiet", gen_quiet, "suppress summary output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (determine->parsed()) {
            return run_mode(determine_args, false, true);
        }
        if (pathway->parsed()) {
            return run_mode(pathway_args, true, false);
        }
        if (full->parsed()) {
            return run_mode(full_args, true, true);
        }
        if (validate_cmd->parsed()) {
            qpath::RunConfig cfg = resolve_config(validate_args);
            const qpath::ValidationResult result = qpath::validate(cfg);
            std::cout << result.transcript();
            return result.all_pass ? kExitOk : kExitValidation;
        }
        if (gen->parsed()) {
            const qpath::Instance instance =
                qpath::generate_instance(qpath::instance_kind_from_name(gen_kind), gen_size,
                                         gen_seed, gen_layers, !gen_shared);
            std::ofstream out(gen_out);
            if (!out) {
                throw qpath::ConfigError("cannot write instance file '" + gen_out + "'");
            }
            out << instance.to_json().dump(2) << '\n';
            if (!gen_quiet) {
                std::cout << "instance: " << gen_kind << " size " << gen_size << ", "
                          << instance.graph.edge_count() << " edges, "
                          << instance.circuit.parameter_count() << " parameters -> " << gen_out
                          << '\n';
            }
            return kExitOk;
        }
    } catch (const qpath::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const qpath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const qpath::StructuralError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
