// Command-line front end: experiment presets, single runs, and operator
// diagnostics for the Crank–Nicolson Galerkin solver of the Benjamin–Ono
// equation u_t + u u_x − H u_xx = 0 on periodic and truncated-line domains.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bogal/exact_solutions.hpp"
#include "bogal/harness.hpp"
#include "bogal/hermite.hpp"
#include "bogal/io.hpp"
#include "bogal/mesh.hpp"
#include "bogal/operators.hpp"
#include "bogal/projection.hpp"
#include "bogal/solver.hpp"
#include "bogal/weight.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// JSON configuration round-trip. The effective-config file written by every
// producing subcommand replays through --config to identical outputs; values
// are stored as the exact strings CLI11 parsed.

class ConfigJSON : public CLI::Config {
  public:
    std::string to_config(const CLI::App* app, bool default_also, bool,
                          std::string) const override {
        return build(app, default_also).dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        input >> j;
        return walk(j, "", {});
    }

  private:
    static ordered_json build(const CLI::App* app, bool default_also) {
        ordered_json j = ordered_json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
            const std::string name = opt->get_lnames()[0];
            if (name == "config" || name == "help") continue;
            if (opt->get_type_size() != 0) {
                if (opt->count() == 1) {
                    j[name] = opt->results().at(0);
                } else if (opt->count() > 1) {
                    j[name] = opt->results();
                } else if (default_also && !opt->get_default_str().empty()) {
                    j[name] = opt->get_default_str();
                }
            } else {
                const bool on =
                    opt->count() > 0 &&
                    (opt->results().empty() ||
                     (opt->results().at(0) != "false" && opt->results().at(0) != "0"));
                if (opt->count() > 0 || default_also) j[name] = on ? "true" : "false";
            }
        }
        for (const CLI::App* sub : app->get_subcommands(nullptr))
            if (sub->parsed()) j[sub->get_name()] = build(sub, default_also);
        return j;
    }

    static std::vector<CLI::ConfigItem> walk(const nlohmann::json& j,
                                             const std::string& name,
                                             std::vector<std::string> parents) {
        std::vector<CLI::ConfigItem> items;
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (auto it = j.cbegin(); it != j.cend(); ++it) {
                auto sub = walk(*it, it.key(), parents);
                items.insert(items.end(), sub.begin(), sub.end());
            }
            return items;
        }
        if (name.empty())
            throw CLI::ConversionError("top-level config entries must be objects");
        items.emplace_back();
        CLI::ConfigItem& item = items.back();
        item.name = name;
        item.parents = std::move(parents);
        auto scalar = [](const nlohmann::json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_number()) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
                return buf;
            }
            throw CLI::ConversionError("unsupported config value type");
        };
        if (j.is_array())
            for (const auto& v : j) item.inputs.push_back(scalar(v));
        else
            item.inputs.push_back(scalar(j));
        return items;
    }
};

// ---------------------------------------------------------------------------
// Flag-value parsing helpers.

bogal::WeightFunction parse_weight(const std::string& spec) {
    double a = 0.0, b = 0.0;
    if (spec == "unit") return bogal::WeightFunction::unit();
    if (std::sscanf(spec.c_str(), "linear:%lf,%lf", &a, &b) == 2)
        return bogal::WeightFunction::linear(a, b);
    if (std::sscanf(spec.c_str(), "cutoff:%lf", &a) == 1)
        return bogal::WeightFunction::smooth_cutoff(a);
    throw CLI::ValidationError("--weight", "expected unit, linear:a,b or cutoff:R");
}

struct DtMode {
    bogal::CflMode mode = bogal::CflMode::periodic;
    double theory_lambda = 1.0;
};

DtMode parse_dt_mode(const std::string& spec) {
    DtMode out;
    if (spec == "periodic") return out;
    if (spec == "full-line") {
        out.mode = bogal::CflMode::full_line;
        return out;
    }
    if (std::sscanf(spec.c_str(), "theory:%lf", &out.theory_lambda) == 1) {
        out.mode = bogal::CflMode::theory;
        return out;
    }
    throw CLI::ValidationError("--dt-mode", "expected periodic, full-line or theory:lambda");
}

std::string time_label(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> sample_points(const bogal::UniformPeriodicMesh& mesh, int count) {
    if (count <= 0) return mesh.node_coordinates();
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i)
        xs[i] = mesh.left() + mesh.period() * i / count;
    return xs;
}

void write_field_csv(const fs::path& path, const bogal::HermiteField& u,
                     const std::vector<double>& xs) {
    std::vector<double> us(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) us[i] = bogal::evaluate(u, xs[i]);
    bogal::write_snapshot_csv(path.string(), xs, us);
}

// ---------------------------------------------------------------------------
// run: evolve one configured problem and emit snapshots.

struct RunOptions {
    std::string problem = "periodic-wave";
    int elements = 64;
    double t_end = -1.0;  // -1: problem default (480 wave, 90 soliton, 0 custom)
    std::vector<double> snapshots;
    std::vector<double> domain;  // empty: problem default
    std::string weight_spec = "auto";
    std::string dt_mode_spec = "auto";
    double stop_factor = 0.002;
    int max_iters = 100;
    double speed = 0.25;
    double phase = 0.0;
    double c1 = 0.3, c2 = 0.6, d1 = -30.0, d2 = -55.0;
    std::string initial_csv;
    bool weighted_projection = false;
    bool dump_operators = false;
    int sample_count = 0;
    std::string out_dir = "out";
};

int do_run(const RunOptions& opt, const std::string& effective_config) {
    const bool is_wave = opt.problem == "periodic-wave";
    const bool is_soliton = opt.problem == "double-soliton";
    const bool is_custom = opt.problem == "custom-initial";
    if (!is_wave && !is_soliton && !is_custom)
        throw CLI::ValidationError("--problem",
                                   "expected periodic-wave, double-soliton or custom-initial");
    if (is_custom && opt.initial_csv.empty())
        throw CLI::ValidationError("--initial-csv", "required for custom-initial");

    double left = is_wave ? -15.0 : -100.0;
    double right = is_wave ? 15.0 : 100.0;
    if (opt.domain.size() == 2) {
        left = opt.domain[0];
        right = opt.domain[1];
    } else if (!opt.domain.empty()) {
        throw CLI::ValidationError("--domain", "expected lo,hi");
    }

    int elements = opt.elements;
    bogal::NodalInitialData nodal;
    if (is_custom) {
        nodal = bogal::read_nodal_initial_csv(opt.initial_csv);
        elements = (int)nodal.x.size();
        const double h = elements > 1 ? nodal.x[1] - nodal.x[0] : 1.0;
        for (int j = 0; j < elements; ++j)
            if (std::abs(nodal.x[j] - nodal.x[0] - j * h) > 1e-9 * (1.0 + std::abs(nodal.x[j])))
                throw std::runtime_error("custom initial data must sit on a uniform grid");
        left = nodal.x[0];
        right = nodal.x[0] + elements * h;
    }
    const bogal::UniformPeriodicMesh mesh(left, right, elements);

    const std::string weight_spec =
        opt.weight_spec != "auto" ? opt.weight_spec
                                  : (is_soliton ? "linear:120,1" : "unit");
    const bogal::WeightFunction w = parse_weight(weight_spec);
    w.validate_on(mesh.left(), mesh.right());

    const std::string dt_mode_spec =
        opt.dt_mode_spec != "auto" ? opt.dt_mode_spec
                                   : (is_soliton ? "full-line" : "periodic");
    const DtMode dt_mode = parse_dt_mode(dt_mode_spec);

    bogal::HermiteField u0(mesh);
    const bogal::WeightFunction proj_w =
        opt.weighted_projection ? w : bogal::WeightFunction::unit();
    if (is_wave) {
        const bogal::PeriodicWaveParams wave(opt.speed, 0.5 * mesh.period(), opt.phase);
        u0 = bogal::project([&](double x) { return wave.value(x, 0.0); }, mesh, proj_w);
    } else if (is_soliton) {
        const bogal::DoubleSolitonParams sol(opt.c1, opt.c2, opt.d1, opt.d2);
        u0 = bogal::project([&](double x) { return sol.value(x, 0.0); }, mesh, proj_w);
    } else {
        for (int j = 0; j < elements; ++j) {
            u0.coeffs[2 * j] = nodal.u[j];
            u0.coeffs[2 * j + 1] = mesh.dx() * nodal.du[j];
        }
    }

    bogal::SchemeConfig cfg;
    cfg.dt = bogal::cfl_timestep(mesh, dt_mode.mode, u0, dt_mode.theory_lambda);
    cfg.t_end = opt.t_end >= 0.0 ? opt.t_end : (is_wave ? 480.0 : is_soliton ? 90.0 : 0.0);
    cfg.stop_factor = opt.stop_factor;
    cfg.max_iters = opt.max_iters;
    cfg.cfl_mode = dt_mode.mode;
    cfg.theory_lambda = dt_mode.theory_lambda;

    std::vector<double> times = opt.snapshots;
    if (times.empty()) times.push_back(cfg.t_end);

    const bogal::AssembledOperators ops =
        bogal::AssembledOperators::assemble(mesh, w, cfg.dt);
    const bogal::EvolveResult result = bogal::evolve(u0, ops, cfg, times);

    fs::create_directories(opt.out_dir);
    const std::vector<double> xs = sample_points(mesh, opt.sample_count);
    ordered_json meta;
    meta["problem"] = opt.problem;
    meta["elements"] = elements;
    meta["domain"] = {mesh.left(), mesh.right()};
    meta["weight"] = w.describe();
    meta["dt"] = cfg.dt;
    meta["dt_mode"] = dt_mode_spec;
    meta["stop_factor"] = cfg.stop_factor;
    meta["total_steps"] = result.total_steps;
    meta["t_reached"] = result.t_reached;
    meta["total_iterations"] = result.total_iterations;
    meta["iteration_histogram"] = result.iteration_histogram;
    meta["snapshots"] = ordered_json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const std::string name = "snapshot_t" + time_label(times[i]) + ".csv";
        write_field_csv(fs::path(opt.out_dir) / name, result.snapshots[i], xs);
        ordered_json snap;
        snap["file"] = name;
        snap["requested_time"] = times[i];
        snap["time"] = result.snapshot_times[i];
        snap["step"] = result.snapshot_steps[i];
        meta["snapshots"].push_back(snap);
    }
    if (opt.dump_operators) {
        bogal::write_matrix_csv((fs::path(opt.out_dir) / "mass_matrix.csv").string(),
                                ops.mass_w);
        bogal::write_matrix_csv((fs::path(opt.out_dir) / "hilbert_matrix.csv").string(),
                                ops.hilbert_stiff);
    }
    write_text(fs::path(opt.out_dir) / "run_meta.json", meta.dump(2) + "\n");
    write_text(fs::path(opt.out_dir) / "effective_config.json", effective_config);
    std::cout << "run: " << result.total_steps << " steps to t=" << result.t_reached
              << ", " << times.size() << " snapshot(s) in " << opt.out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// converge: grid-refinement study presets.

struct ConvergeOptions {
    std::string preset;
    std::vector<int> n_list;
    double stop_factor = 0.002;
    bool weighted_projection = false;
    bool allow_large = false;
    std::string out_dir = "out";
};

void print_report(const bogal::ConvergenceReport& report) {
    std::cout << report.experiment << " (t=" << report.report_time
              << ", " << report.dt_rule << ")\n";
    std::printf("  %6s  %12s  %6s\n", "N", "E", "rate");
    for (const auto& row : report.rows) {
        if (row.has_rate)
            std::printf("  %6d  %12.8f  %6.2f\n", row.elements, row.error, row.rate);
        else
            std::printf("  %6d  %12.8f\n", row.elements, row.error);
    }
}

int do_converge(const ConvergeOptions& opt, const std::string& effective_config) {
    bogal::StudyOptions study;
    study.stop_factor = opt.stop_factor;
    study.weighted_projection = opt.weighted_projection;
    study.allow_large = opt.allow_large;
    study.experiment = opt.preset;

    bogal::StudyResult result;
    if (opt.preset == "table2") {
        const std::vector<int> ns =
            opt.n_list.empty() ? std::vector<int>{16, 32, 64, 128, 256} : opt.n_list;
        result = bogal::run_periodic_wave_study(ns, 480.0, 0.25, 15.0, study);
    } else if (opt.preset == "table1") {
        const std::vector<int> ns =
            opt.n_list.empty() ? std::vector<int>{128, 256, 512} : opt.n_list;
        result = bogal::run_double_soliton_study(ns, {90.0, 180.0}, -100.0, 100.0,
                                                 bogal::WeightFunction::linear(120.0, 1.0),
                                                 bogal::DoubleSolitonParams(), study);
    } else {
        throw CLI::ValidationError("--preset", "expected table1 or table2");
    }

    fs::create_directories(opt.out_dir);
    for (const auto& report : result.reports) {
        bogal::emit_report(report, (fs::path(opt.out_dir) / (report.experiment + ".csv")).string());
        print_report(report);
    }
    for (std::size_t ri = 0; ri < result.reports.size(); ++ri)
        for (std::size_t i = 0; i < result.runs.size(); ++i) {
            const std::string name = result.reports[ri].experiment + "_" +
                                     std::to_string(result.runs[i].elements) + ".csv";
            bogal::write_snapshot_csv((fs::path(opt.out_dir) / name).string(),
                                      result.finest_nodes,
                                      result.runs[i].snapshot_values[ri]);
        }
    write_text(fs::path(opt.out_dir) / "effective_config.json", effective_config);
    return 0;
}

// ---------------------------------------------------------------------------
// project-test: approximation rates of the L²-projection.

struct ProjectTestOptions {
    std::vector<int> n_list{16, 32, 64, 128};
    double half_period = 15.0;
    std::string out_dir;
};

int do_project_test(const ProjectTestOptions& opt, const std::string& effective_config) {
    const double L = opt.half_period;
    auto f = [&](double x) { return std::sin(M_PI * x / L); };
    auto df = [&](double x) { return M_PI / L * std::cos(M_PI * x / L); };
    std::vector<double> el2, eh1;
    std::printf("  %6s  %14s  %6s  %14s  %6s\n", "N", "L2", "rate", "H1", "rate");
    std::ostringstream csv;
    csv << "N,l2_error,l2_rate,h1_error,h1_rate\n";
    for (std::size_t i = 0; i < opt.n_list.size(); ++i) {
        const bogal::UniformPeriodicMesh mesh(-L, L, opt.n_list[i]);
        const bogal::HermiteField p = bogal::project(f, mesh);
        el2.push_back(bogal::projection_error(p, f));
        eh1.push_back(bogal::projection_error(p, df, 1));
        char l2r[16] = "", h1r[16] = "";
        if (i > 0) {
            std::snprintf(l2r, sizeof l2r, "%.2f", std::log2(el2[i - 1] / el2[i]));
            std::snprintf(h1r, sizeof h1r, "%.2f", std::log2(eh1[i - 1] / eh1[i]));
        }
        std::printf("  %6d  %14.6e  %6s  %14.6e  %6s\n", opt.n_list[i], el2[i], l2r,
                    eh1[i], h1r);
        char line[128];
        std::snprintf(line, sizeof line, "%d,%.17g,%s,%.17g,%s\n", opt.n_list[i],
                      el2[i], l2r, eh1[i], h1r);
        csv << line;
    }
    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        write_text(fs::path(opt.out_dir) / "projection_rates.csv", csv.str());
        write_text(fs::path(opt.out_dir) / "effective_config.json", effective_config);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// check-operators: assembled-operator diagnostics, exit 3 on violation.

struct CheckOptions {
    int elements = 64;
    double half_period = 15.0;
};

int do_check_operators(const CheckOptions& opt) {
    const double L = opt.half_period;
    const bogal::WeightFunction unit = bogal::WeightFunction::unit();
    bool ok = true;
    auto verdict = [&](const char* what, bool pass, double value, const char* detail) {
        std::printf("%-24s %s  (%s = %.3e)\n", what, pass ? "ok" : "VIOLATION", detail,
                    value);
        ok = ok && pass;
    };

    const bogal::UniformPeriodicMesh mesh(-L, L, opt.elements);
    const bogal::UniformPeriodicMesh half(-L, L, opt.elements / 2);
    const Eigen::MatrixXd h = bogal::assemble_hilbert_stiffness(mesh, unit);
    const Eigen::MatrixXd h2 = bogal::assemble_hilbert_stiffness(half, unit);

    const double skew = (h + h.transpose()).cwiseAbs().maxCoeff();
    const double scale = h.cwiseAbs().maxCoeff();
    verdict("skew-symmetry", skew <= 1e-8 * scale, skew / scale, "max|H+H'|/max|H|");

    auto multiplier_error = [&](const bogal::UniformPeriodicMesh& m,
                                const Eigen::MatrixXd& hm, int k) {
        const Eigen::MatrixXd s = bogal::assemble_weighted_stiffness(m, unit);
        const bogal::HermiteField u = bogal::interpolate(
            [&](double x) { return std::sin(k * M_PI * x / L); },
            [&](double x) { return k * M_PI / L * std::cos(k * M_PI * x / L); }, m);
        const bogal::HermiteField v = bogal::interpolate(
            [&](double x) { return -std::cos(k * M_PI * x / L); },
            [&](double x) { return k * M_PI / L * std::sin(k * M_PI * x / L); }, m);
        const Eigen::VectorXd diff = hm * u.coeffs - s * v.coeffs;
        return diff.cwiseAbs().maxCoeff() / (s * v.coeffs).cwiseAbs().maxCoeff();
    };
    double worst_rate = 1e300;
    for (int k = 1; k <= 4; ++k) {
        const double coarse = multiplier_error(half, h2, k);
        const double fine = multiplier_error(mesh, h, k);
        worst_rate = std::min(worst_rate, std::log2(coarse / fine));
    }
    verdict("fourier multiplier", worst_rate >= 2.0, worst_rate, "min rate k=1..4");

    {
        const bogal::PeriodicWaveParams wave;
        bogal::SchemeConfig cfg;
        cfg.dt = 0.5 * mesh.dx();
        cfg.t_end = 10 * cfg.dt;
        cfg.stop_factor = 1e-10;
        bogal::HermiteField state =
            bogal::project([&](double x) { return wave.value(x, 0.0); }, mesh);
        const bogal::AssembledOperators ops =
            bogal::AssembledOperators::assemble(mesh, unit, cfg.dt);
        const double before = bogal::l2_norm(state);
        for (int n = 0; n < 10; ++n) state = bogal::step(state, ops, cfg).first;
        const double after = bogal::l2_norm(state);
        verdict("l2 conservation", std::abs(after - before) / before <= 1e-8,
                std::abs(after - before) / before, "10-step drift");

        bogal::HermiteField zero(mesh);
        const auto [znext, zrep] = bogal::step(zero, ops, cfg);
        const bool zero_ok =
            (znext.coeffs.array() == 0.0).all() && zrep.iterations_used == 1;
        verdict("zero fixed point", zero_ok, 0.0, "bitwise");
    }

    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crank-Nicolson Galerkin solver for the Benjamin-Ono equation"};
    app.require_subcommand(0, 1);
    app.config_formatter(std::make_shared<ConfigJSON>());
    app.set_config("--config", "", "JSON configuration file (flags take precedence)");

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "evolve one problem and emit snapshots");
    run->configurable();
    run->add_option("--problem", run_opt.problem,
                    "periodic-wave | double-soliton | custom-initial")
        ->capture_default_str();
    run->add_option("--elements", run_opt.elements, "mesh elements N")
        ->capture_default_str();
    run->add_option("--t-end", run_opt.t_end,
                    "end time; -1 = problem default (480 wave, 90 soliton, 0 custom)")
        ->capture_default_str();
    run->add_option("--snapshots", run_opt.snapshots,
                    "snapshot times (default: t-end only)")
        ->delimiter(',');
    run->add_option("--domain", run_opt.domain, "domain as lo,hi (default per problem)")
        ->delimiter(',')
        ->expected(0, 2);
    run->add_option("--weight", run_opt.weight_spec,
                    "unit | linear:a,b | cutoff:R (default per problem)")
        ->capture_default_str();
    run->add_option("--dt-mode", run_opt.dt_mode_spec,
                    "periodic | full-line | theory:lambda (default per problem)")
        ->capture_default_str();
    run->add_option("--stop-factor", run_opt.stop_factor, "iteration stopping factor")
        ->capture_default_str();
    run->add_option("--max-iters", run_opt.max_iters, "iteration cap per step")
        ->capture_default_str();
    run->add_option("--speed", run_opt.speed, "periodic wave speed c")
        ->capture_default_str();
    run->add_option("--phase", run_opt.phase, "periodic wave phase shift")
        ->capture_default_str();
    run->add_option("--c1", run_opt.c1, "double soliton slow speed")->capture_default_str();
    run->add_option("--c2", run_opt.c2, "double soliton fast speed")->capture_default_str();
    run->add_option("--d1", run_opt.d1, "double soliton slow offset")->capture_default_str();
    run->add_option("--d2", run_opt.d2, "double soliton fast offset")->capture_default_str();
    run->add_option("--initial-csv", run_opt.initial_csv,
                    "nodal x,u,du file for custom-initial");
    run->add_flag("--weighted-projection", run_opt.weighted_projection,
                  "project initial data in the weighted inner product");
    run->add_flag("--dump-operators", run_opt.dump_operators,
                  "write mass and Hilbert matrices as CSV");
    run->add_option("--sample-points", run_opt.sample_count,
                    "snapshot sample count (0 = mesh nodes)")
        ->capture_default_str();
    run->add_option("--out", run_opt.out_dir, "output directory")->capture_default_str();

    ConvergeOptions conv_opt;
    CLI::App* converge = app.add_subcommand("converge", "grid-refinement study presets");
    converge->configurable();
    converge->add_option("--preset", conv_opt.preset, "table1 | table2")->required();
    converge->add_option("--n-list", conv_opt.n_list,
                         "doubling element counts (default per preset)")
        ->delimiter(',');
    converge->add_option("--stop-factor", conv_opt.stop_factor, "iteration stopping factor")
        ->capture_default_str();
    converge->add_flag("--weighted-projection", conv_opt.weighted_projection,
                       "project initial data in the weighted inner product");
    converge->add_flag("--allow-large", conv_opt.allow_large,
                       "lift the desk-scale element-count caps");
    converge->add_option("--out", conv_opt.out_dir, "output directory")
        ->capture_default_str();

    ProjectTestOptions proj_opt;
    CLI::App* project_test =
        app.add_subcommand("project-test", "projection approximation-rate table");
    project_test->configurable();
    project_test->add_option("--n-list", proj_opt.n_list, "doubling element counts")
        ->delimiter(',');
    project_test->add_option("--half-period", proj_opt.half_period, "domain half-width")
        ->capture_default_str();
    project_test->add_option("--out", proj_opt.out_dir, "output directory (optional)");

    CheckOptions check_opt;
    CLI::App* check =
        app.add_subcommand("check-operators", "operator diagnostics; exit 3 on violation");
    check->configurable();
    check->add_option("--elements", check_opt.elements, "mesh elements N")
        ->capture_default_str();
    check->add_option("--half-period", check_opt.half_period, "domain half-width")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::string effective = app.config_to_str(true, false);
        if (run->parsed()) return do_run(run_opt, effective);
        if (converge->parsed()) return do_converge(conv_opt, effective);
        if (project_test->parsed()) return do_project_test(proj_opt, effective);
        if (check->parsed()) return do_check_operators(check_opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::cerr << app.help();
    return 2;
}
