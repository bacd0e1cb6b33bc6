#include "qpath/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qpath/errors.hpp"

namespace qpath {

namespace {

nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) {
        throw ConfigError("cannot write '" + p.string() + "'");
    }
    return out;
}

} // namespace

nlohmann::json report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema"] = 1;
    j["config"] = report.config.to_json();
    j["instance"] = report.instance.to_json();

    const StateDetermination& s = report.state;
    j["state_determination"] = {
        {"theta0", vec_to_json(s.theta0)},
        {"f0", s.f0},
        {"f_star", s.f_star},
        {"chi", vec_to_json(s.model.chi)},
        {"fit_method", fit_method_name(s.model.method)},
        {"fit_provenance", s.model.provenance},
        {"fit_max_residual", s.model.max_residual},
        {"fit_rank", s.model.rank},
        {"f_component", vec_to_json(s.decomposition.f_component)},
        {"null_component", vec_to_json(s.decomposition.null_component)},
        {"theta_star", vec_to_json(s.theta_star)},
        {"chi_dot_theta_star", s.chi_dot_theta_star},
        {"identity_residual", s.identity_residual},
        {"f_sim_theta_star", s.f_sim_theta_star},
        {"gap", s.gap}};

    if (!report.ratio_table.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const RatioRow& r : report.ratio_table) {
            rows.push_back({{"delta_f", r.delta_f},
                            {"f_star", r.f_star},
                            {"f_sim", r.f_sim},
                            {"gap", r.gap},
                            {"ratio", r.ratio}});
        }
        j["ratio_test"] = rows;
    }

    if (report.pathway) {
        const PathwayRun& p = *report.pathway;
        nlohmann::json decoded = {{"edge_indices", p.decoded.edge_indices},
                                  {"omega", vec_to_json(p.decoded.omega)},
                                  {"total", p.decoded.total},
                                  {"flagged", p.decoded.flagged},
                                  {"max_kappa_deviation", p.decoded.max_deviation}};
        j["pathway"] = {
            {"upsilon0", vec_to_json(p.upsilon0)},
            {"kernel_retained", p.kernel_retained},
            {"kernel_sigma", p.kernel_sigma},
            {"preimage",
             {{"solution", vec_to_json(p.preimage.solution)},
              {"iterations_used", p.preimage.iterations_used},
              {"converged", p.preimage.converged},
              {"restarts", p.preimage.restarts},
              {"phi_used", p.preimage.phi_used},
              {"gradient_norm_at_solution", p.preimage.gradient_norm_at_solution}}},
            {"decoded", decoded},
            {"extremum",
             {{"point", vec_to_json(p.extremum.extremum)},
              {"gradient_norm", p.extremum.gradient_norm_at_extremum},
              {"distance_to_solution", p.extremum.distance_to_solution},
              {"conclusive", p.extremum.conclusive}}},
            {"omega_sim_at_target", vec_to_json(p.omega_sim_at_target)},
            {"max_edge_deviation", p.max_edge_deviation}};
    }
    return j;
}

void emit_report(const RunReport& report, const std::string& dir, const std::string& format,
                 const StageTimings& timings) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    }
    const fs::path base(dir);
    const bool want_json = format == "json" || format == "both";
    const bool want_csv = format == "csv" || format == "both";

    if (want_json) {
        auto out = open_out(base / "report.json");
        out << report_to_json(report).dump(2) << '\n';
    }

    if (want_csv && report.pathway) {
        const PreImageResult& r = report.pathway->preimage;
        auto out = open_out(base / "preimage_trace.csv");
        out << "iteration,distance,step_norm,denominator,in_hull\n";
        for (std::size_t i = 0; i < r.distance_trace.size(); ++i) {
            out << (i + 1) << ',' << fmt17(r.distance_trace[i]) << ',' << fmt17(r.step_trace[i])
                << ',' << fmt17(r.denominator_trace[i]) << ','
                << (r.in_hull_trace[i] ? 1 : 0) << '\n';
        }
    }
    if (want_csv && report.pathway) {
        const PathwayRun& p = *report.pathway;
        auto out = open_out(base / "edge_comparison.csv");
        out << "edge,u,v,omega_star,omega_sim,abs_deviation\n";
        for (int e = 0; e < report.instance.graph.edge_count(); ++e) {
            const auto& [u, v] = report.instance.graph.edge(e);
            const double dev = std::abs(p.decoded.omega[e] - p.omega_sim_at_target[e]);
            out << e << ',' << u << ',' << v << ',' << fmt17(p.decoded.omega[e]) << ','
                << fmt17(p.omega_sim_at_target[e]) << ',' << fmt17(dev) << '\n';
        }
    }
    if (want_csv && !report.ratio_table.empty()) {
        auto out = open_out(base / "ratio_test.csv");
        out << "delta_f,f_star,f_sim,gap,ratio\n";
        for (const RatioRow& r : report.ratio_table) {
            out << fmt17(r.delta_f) << ',' << fmt17(r.f_star) << ',' << fmt17(r.f_sim) << ','
                << fmt17(r.gap) << ',' << fmt17(r.ratio) << '\n';
        }
    }

    // wall times live outside report.json so that identical configs produce
    // byte-identical reports
    auto out = open_out(base / "timings.json");
    out << nlohmann::json{{"training_ms", timings.training_ms},
                          {"state_ms", timings.state_ms},
                          {"pathway_ms", timings.pathway_ms},
                          {"total_ms", timings.total_ms}}
               .dump(2)
        << '\n';
}

} // namespace qpath
