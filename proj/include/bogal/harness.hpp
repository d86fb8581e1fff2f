#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogal/exact_solutions.hpp"
#include "bogal/hermite.hpp"
#include "bogal/io.hpp"
#include "bogal/mesh.hpp"
#include "bogal/operators.hpp"
#include "bogal/projection.hpp"
#include "bogal/solver.hpp"
#include "bogal/weight.hpp"

namespace bogal {

struct ConvergenceRow {
    int elements = 0;
    double error = 0.0;
    double rate = 0.0;
    bool has_rate = false;
    double reached_time = 0.0;
    long steps = 0;
};

/// One refinement table: element counts double row to row and each rate is
/// log₂ of the error ratio with the next row (absent on the last row).
struct ConvergenceReport {
    std::string experiment;
    double report_time = 0.0;
    std::string dt_rule;
    std::vector<ConvergenceRow> rows;
};

/// Per-mesh artifacts of a study beyond the table rows. Snapshots are stored
/// as values sampled at the finest mesh's nodes (one row per report time);
/// the fields themselves reference study-local meshes and do not outlive it.
struct StudyRun {
    int elements = 0;
    double dt = 0.0;
    long total_steps = 0;
    std::vector<long> iteration_histogram;
    std::vector<double> snapshot_times;
    std::vector<std::vector<double>> snapshot_values;
};

struct StudyResult {
    std::vector<ConvergenceReport> reports;  // one per report time
    std::vector<double> finest_nodes;
    std::vector<StudyRun> runs;  // aligned with the element-count list
};

struct StudyOptions {
    double stop_factor = 0.002;
    bool weighted_projection = false;
    bool allow_large = false;
    std::string experiment;  // overrides the default report id
};

/// Relative L²-error of a discrete solution against a reference function,
/// both sampled at the given uniform grid (by convention: the node set of
/// the finest mesh in a study). On a periodic uniform grid the composite
/// trapezoidal weights with matching end values reduce to a plain sum, and
/// the common spacing cancels in the ratio.
template <class F>
double relative_l2_error(const HermiteField& approx, F&& exact_at,
                         const std::vector<double>& finest_nodes) {
    double num = 0.0, den = 0.0;
    for (double x : finest_nodes) {
        const double a = evaluate(approx, x);
        const double e = exact_at(x);
        num += (a - e) * (a - e);
        den += e * e;
    }
    if (!(den > 0.0))
        throw std::invalid_argument("error metric: reference vanishes on the grid");
    return std::sqrt(num / den);
}

/// Same metric with the discrete solution already sampled at the grid.
template <class F>
double relative_l2_error(const std::vector<double>& approx_at, F&& exact_at,
                         const std::vector<double>& finest_nodes) {
    if (approx_at.size() != finest_nodes.size())
        throw std::invalid_argument("error metric: sample count mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < finest_nodes.size(); ++i) {
        const double e = exact_at(finest_nodes[i]);
        num += (approx_at[i] - e) * (approx_at[i] - e);
        den += e * e;
    }
    if (!(den > 0.0))
        throw std::invalid_argument("error metric: reference vanishes on the grid");
    return std::sqrt(num / den);
}

inline std::vector<double> sample_field(const HermiteField& u,
                                        const std::vector<double>& xs) {
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = evaluate(u, xs[i]);
    return vals;
}

namespace detail {

inline void require_doubling(const std::vector<int>& n_list, int cap,
                             bool allow_large, const char* study) {
    if (n_list.empty())
        throw std::invalid_argument(std::string(study) + ": empty element list");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 4)
            throw std::invalid_argument(std::string(study) + ": need at least 4 elements");
        if (i > 0 && n_list[i] != 2 * n_list[i - 1])
            throw std::invalid_argument(std::string(study) +
                                        ": element counts must double row to row");
    }
    if (n_list.back() > cap && !allow_large)
        throw std::invalid_argument(
            std::string(study) + ": element count above the desk-scale cap (" +
            std::to_string(cap) + "); rerun with allow_large / --allow-large");
}

inline void fill_rates(ConvergenceReport& report) {
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        report.rows[i].rate =
            std::log2(report.rows[i].error / report.rows[i + 1].error);
        report.rows[i].has_rate = true;
    }
}

template <class F>
double sampled_sup(const UniformPeriodicMesh& mesh, F&& f) {
    double sup = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e)
        for (int k = 0; k <= 8; ++k)
            sup = std::max(sup, std::abs(f(mesh.node(e) + mesh.dx() * k / 8.0)));
    return sup;
}

}  // namespace detail

/// Grid-refinement study for the periodic traveling wave: unit weight,
/// dt = Δx/2, solution advanced to (approximately) t_target on each mesh and
/// compared with the closed form at the time actually reached.
inline StudyResult run_periodic_wave_study(const std::vector<int>& n_list,
                                           double t_target = 480.0,
                                           double speed = 0.25,
                                           double half_period = 15.0,
                                           const StudyOptions& opt = {}) {
    detail::require_doubling(n_list, 256, opt.allow_large, "periodic-wave study");
    const PeriodicWaveParams wave(speed, half_period);
    const WeightFunction w = WeightFunction::unit();

    const UniformPeriodicMesh finest(-half_period, half_period, n_list.back());
    StudyResult result;
    result.finest_nodes = finest.node_coordinates();
    ConvergenceReport report;
    report.experiment = opt.experiment.empty() ? "periodic_wave" : opt.experiment;
    report.report_time = t_target;
    report.dt_rule = "dt = 0.5*dx";

    for (int n : n_list) {
        const UniformPeriodicMesh mesh(-half_period, half_period, n);
        SchemeConfig cfg;
        cfg.dt = cfl_timestep(mesh, CflMode::periodic, HermiteField(mesh));
        cfg.t_end = t_target;
        cfg.stop_factor = opt.stop_factor;
        cfg.cfl_mode = CflMode::periodic;
        const HermiteField u0 =
            project([&](double x) { return wave.value(x, 0.0); }, mesh,
                    opt.weighted_projection ? w : WeightFunction::unit());
        const AssembledOperators ops = AssembledOperators::assemble(mesh, w, cfg.dt);
        EvolveResult run = evolve(u0, ops, cfg, {t_target});

        StudyRun sr;
        sr.elements = n;
        sr.dt = cfg.dt;
        sr.total_steps = run.total_steps;
        sr.iteration_histogram = run.iteration_histogram;
        sr.snapshot_times = run.snapshot_times;
        for (const HermiteField& s : run.snapshots)
            sr.snapshot_values.push_back(sample_field(s, result.finest_nodes));

        ConvergenceRow row;
        row.elements = n;
        row.reached_time = sr.snapshot_times[0];
        row.steps = run.total_steps;
        row.error = relative_l2_error(
            sr.snapshot_values[0],
            [&](double x) { return wave.value(x, row.reached_time); },
            result.finest_nodes);
        report.rows.push_back(row);
        result.runs.push_back(std::move(sr));
    }
    detail::fill_rates(report);
    result.reports.push_back(std::move(report));
    return result;
}

/// Grid-refinement study for the double soliton on a truncated domain with
/// an affine weight: dt = Δx/(2·sup|u₀|), errors reported at every requested
/// time (one report per time, sharing the per-mesh runs).
inline StudyResult run_double_soliton_study(
    const std::vector<int>& n_list, std::vector<double> times = {90.0, 180.0},
    double domain_left = -100.0, double domain_right = 100.0,
    const WeightFunction& w = WeightFunction::linear(120.0, 1.0),
    const DoubleSolitonParams& sol = DoubleSolitonParams(),
    const StudyOptions& opt = {}) {
    detail::require_doubling(n_list, 512, opt.allow_large, "double-soliton study");
    if (times.empty())
        throw std::invalid_argument("double-soliton study: no report times");
    std::sort(times.begin(), times.end());

    const UniformPeriodicMesh finest(domain_left, domain_right, n_list.back());
    StudyResult result;
    result.finest_nodes = finest.node_coordinates();
    const std::string base = opt.experiment.empty() ? "double_soliton" : opt.experiment;
    for (double t : times) {
        ConvergenceReport report;
        report.experiment = base + "_t" + std::to_string((long long)std::llround(t));
        report.report_time = t;
        report.dt_rule = "dt = 0.5*dx/sup|u0|";
        result.reports.push_back(std::move(report));
    }

    for (int n : n_list) {
        const UniformPeriodicMesh mesh(domain_left, domain_right, n);
        const double sup =
            detail::sampled_sup(mesh, [&](double x) { return sol.value(x, 0.0); });
        SchemeConfig cfg;
        cfg.dt = 0.5 * mesh.dx() / sup;
        cfg.t_end = times.back();
        cfg.stop_factor = opt.stop_factor;
        cfg.cfl_mode = CflMode::full_line;
        const HermiteField u0 =
            project([&](double x) { return sol.value(x, 0.0); }, mesh,
                    opt.weighted_projection ? w : WeightFunction::unit());
        const AssembledOperators ops = AssembledOperators::assemble(mesh, w, cfg.dt);
        EvolveResult run = evolve(u0, ops, cfg, times);

        StudyRun sr;
        sr.elements = n;
        sr.dt = cfg.dt;
        sr.total_steps = run.total_steps;
        sr.iteration_histogram = run.iteration_histogram;
        sr.snapshot_times = run.snapshot_times;
        for (const HermiteField& s : run.snapshots)
            sr.snapshot_values.push_back(sample_field(s, result.finest_nodes));

        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            ConvergenceRow row;
            row.elements = n;
            row.reached_time = sr.snapshot_times[ti];
            row.steps = sr.snapshot_times[ti] > 0 ? std::llround(sr.snapshot_times[ti] / cfg.dt) : 0;
            row.error = relative_l2_error(
                sr.snapshot_values[ti],
                [&](double x) { return sol.value(x, row.reached_time); },
                result.finest_nodes);
            result.reports[ti].rows.push_back(row);
        }
        result.runs.push_back(std::move(sr));
    }
    for (auto& report : result.reports) detail::fill_rates(report);
    return result;
}

/// CSV table `N,E,rate` (errors to 8 decimals, rates to 2, last rate empty)
/// plus a JSON metadata sidecar next to it.
inline void emit_report(const ConvergenceReport& report, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
    out << "N,E,rate\n";
    char buf[64];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.8f,", row.elements, row.error);
        out << buf;
        if (row.has_rate) {
            std::snprintf(buf, sizeof buf, "%.2f", row.rate);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + csv_path);

    nlohmann::ordered_json meta;
    meta["experiment"] = report.experiment;
    meta["report_time"] = report.report_time;
    meta["dt_rule"] = report.dt_rule;
    meta["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json jr;
        jr["N"] = row.elements;
        jr["E"] = row.error;
        if (row.has_rate)
            jr["rate"] = row.rate;
        else
            jr["rate"] = nullptr;
        jr["reached_time"] = row.reached_time;
        jr["steps"] = row.steps;
        meta["rows"].push_back(jr);
    }
    std::string json_path = csv_path;
    if (json_path.size() > 4 && json_path.substr(json_path.size() - 4) == ".csv")
        json_path = json_path.substr(0, json_path.size() - 4);
    json_path += ".json";
    std::ofstream jout(json_path);
    if (!jout) throw std::runtime_error("cannot open for writing: " + json_path);
    jout << meta.dump(2) << '\n';
    if (!jout) throw std::runtime_error("write failed: " + json_path);
}

}  // namespace bogal
