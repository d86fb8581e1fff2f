#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bogal/hermite.hpp"
#include "bogal/mesh.hpp"
#include "bogal/operators.hpp"

namespace bogal {

enum class CflMode { periodic, full_line, theory };

/// Time-stepping configuration. dt is authoritative; cfl_mode records which
/// rule produced it (see cfl_timestep).
struct SchemeConfig {
    double dt = 0.0;
    double t_end = 0.0;
    double stop_factor = 0.002;
    int max_iters = 100;
    CflMode cfl_mode = CflMode::periodic;
    double theory_lambda = 1.0;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("scheme: dt must be positive");
        if (!(stop_factor > 0.0))
            throw std::invalid_argument("scheme: stop_factor must be positive");
        if (!(t_end >= 0.0)) throw std::invalid_argument("scheme: t_end must be >= 0");
        if (max_iters < 1) throw std::invalid_argument("scheme: max_iters must be >= 1");
    }
};

struct StepReport {
    int iterations_used = 0;
    double final_residual = 0.0;
    double l2_norm_after = 0.0;
};

struct IterationLimitExceeded : std::runtime_error {
    int iterations;
    double residual;
    IterationLimitExceeded(int iters, double res)
        : std::runtime_error("linearized iteration did not reach its stopping "
                             "tolerance; time step likely too large"),
          iterations(iters), residual(res) {}
};

struct NonFiniteState : std::runtime_error {
    NonFiniteState() : std::runtime_error("solution left the finite range") {}
};

/// One Crank–Nicolson step via the linearized fixed-point iteration
///   [M_φ + (Δt/2)H] w^{ℓ+1} = M_φ u^n − (Δt/2)H u^n + (Δt/2)B((w^ℓ+u^n)/2),
/// started from w⁰ = u^n and stopped once the unit-weight L² distance of
/// consecutive iterates drops below stop_factor·Δx·‖u^n‖. The zero field
/// passes through exactly: every term above vanishes bitwise.
inline std::pair<HermiteField, StepReport> step(const HermiteField& u_n,
                                                const AssembledOperators& ops,
                                                const SchemeConfig& cfg) {
    cfg.validate();
    if (!(*u_n.mesh == *ops.mesh))
        throw std::invalid_argument("step: field and operators disagree on the mesh");
    if (cfg.dt != ops.dt)
        throw std::invalid_argument("step: operators were factorized for a different dt");

    const double tol = cfg.stop_factor * ops.mesh->dx() * l2_norm(u_n);
    const Eigen::VectorXd fixed_rhs =
        ops.mass_w * u_n.coeffs - 0.5 * cfg.dt * (ops.hilbert_stiff * u_n.coeffs);

    HermiteField w = u_n;
    HermiteField mid(*ops.mesh);
    HermiteField incr(*ops.mesh);
    StepReport report;
    const QuadratureRule& outer = gauss_legendre(ops.outer_order);
    for (int it = 0; it < cfg.max_iters; ++it) {
        mid.coeffs = 0.5 * (w.coeffs + u_n.coeffs);
        const Eigen::VectorXd rhs =
            fixed_rhs + 0.5 * cfg.dt * nonlinear_form(mid, ops.weight, outer);
        Eigen::VectorXd next = ops.implicit_lu.solve(rhs);
        if (!next.allFinite()) throw NonFiniteState();
        incr.coeffs = next - w.coeffs;
        w.coeffs = std::move(next);
        report.iterations_used = it + 1;
        report.final_residual = l2_norm(incr);
        if (report.final_residual <= tol) {
            report.l2_norm_after = l2_norm(w);
            return {std::move(w), report};
        }
    }
    throw IterationLimitExceeded(report.iterations_used, report.final_residual);
}

struct EvolveResult {
    std::vector<HermiteField> snapshots;
    std::vector<double> snapshot_times;
    std::vector<long> snapshot_steps;
    long total_steps = 0;
    double t_reached = 0.0;
    long total_iterations = 0;
    std::vector<long> iteration_histogram;  // index = iterations in a step
};

/// Advance with a fixed dt for round(t_end/dt) steps; each requested snapshot
/// is taken at the step whose time n·dt is nearest it, with the actual time
/// recorded. Strictly sequential and deterministic.
inline EvolveResult evolve(const HermiteField& u0, const AssembledOperators& ops,
                           const SchemeConfig& cfg,
                           const std::vector<double>& snapshot_times = {}) {
    cfg.validate();
    if (!(*u0.mesh == *ops.mesh))
        throw std::invalid_argument("evolve: field and operators disagree on the mesh");
    EvolveResult result;
    result.total_steps = std::llround(cfg.t_end / cfg.dt);
    result.t_reached = result.total_steps * cfg.dt;

    std::vector<std::pair<long, std::size_t>> slots;
    for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
        const double t = snapshot_times[i];
        if (t > cfg.t_end * (1.0 + 1e-12) + 1e-300)
            throw std::invalid_argument("evolve: snapshot time beyond t_end");
        long n = std::llround(t / cfg.dt);
        n = std::max(0L, std::min(n, result.total_steps));
        slots.emplace_back(n, i);
    }
    std::sort(slots.begin(), slots.end());
    result.snapshots.resize(snapshot_times.size(), HermiteField(*ops.mesh));
    result.snapshot_times.resize(snapshot_times.size());
    result.snapshot_steps.resize(snapshot_times.size());

    std::size_t cursor = 0;
    auto deliver = [&](long n, const HermiteField& state) {
        for (; cursor < slots.size() && slots[cursor].first == n; ++cursor) {
            const std::size_t i = slots[cursor].second;
            result.snapshots[i] = state;
            result.snapshot_times[i] = n * cfg.dt;
            result.snapshot_steps[i] = n;
        }
    };

    HermiteField state = u0;
    deliver(0, state);
    for (long n = 1; n <= result.total_steps; ++n) {
        auto [next, report] = step(state, ops, cfg);
        state = std::move(next);
        result.total_iterations += report.iterations_used;
        if ((std::size_t)report.iterations_used >= result.iteration_histogram.size())
            result.iteration_histogram.resize(report.iterations_used + 1, 0);
        ++result.iteration_histogram[report.iterations_used];
        deliver(n, state);
    }
    return result;
}

/// Time-step rules used in the experiments: 0.5Δx on the periodic domain,
/// 0.5Δx/‖u₀‖_∞ on the truncated line (sup sampled on 8 subintervals per
/// element, nodes included), and the contraction-theory λΔx².
inline double cfl_timestep(const UniformPeriodicMesh& mesh, CflMode mode,
                           const HermiteField& u0, double theory_lambda = 1.0) {
    switch (mode) {
        case CflMode::periodic:
            return 0.5 * mesh.dx();
        case CflMode::theory:
            if (!(theory_lambda > 0.0))
                throw std::invalid_argument("cfl: theory factor must be positive");
            return theory_lambda * mesh.dx() * mesh.dx();
        case CflMode::full_line: {
            if (!(*u0.mesh == mesh))
                throw std::invalid_argument("cfl: field lives on a different mesh");
            double sup = 0.0;
            for (int e = 0; e < mesh.num_elements(); ++e)
                for (int k = 0; k <= 8; ++k)
                    sup = std::max(sup, std::abs(evaluate_local(u0, e, k / 8.0)));
            if (sup == 0.0)
                throw std::invalid_argument("cfl: zero field has no sup-norm time step");
            return 0.5 * mesh.dx() / sup;
        }
    }
    throw std::invalid_argument("cfl: unknown mode");
}

}  // namespace bogal
