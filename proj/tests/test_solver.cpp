#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bogal/exact_solutions.hpp"
#include "bogal/hermite.hpp"
#include "bogal/mesh.hpp"
#include "bogal/operators.hpp"
#include "bogal/projection.hpp"
#include "bogal/solver.hpp"
#include "bogal/weight.hpp"

using namespace bogal;
using Catch::Matchers::WithinAbs;

namespace {

HermiteField projected_wave(const UniformPeriodicMesh& mesh) {
    const PeriodicWaveParams wave(0.25, 15.0);
    return project([&](double x) { return wave.value(x, 0.0); }, mesh);
}

}  // namespace

TEST_CASE("configuration and argument validation") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 16);
    const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), 0.1);
    const HermiteField u(mesh);

    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    CHECK_NOTHROW(cfg.validate());

    SchemeConfig bad = cfg;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.stop_factor = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.t_end = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.max_iters = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.dt = 0.2;  // operators hold the 0.1 factorization
    CHECK_THROWS_AS(step(u, ops, bad), std::invalid_argument);

    const UniformPeriodicMesh other(-15.0, 15.0, 8);
    const HermiteField v(other);
    CHECK_THROWS_AS(step(v, ops, cfg), std::invalid_argument);

    CHECK_THROWS_AS(evolve(u, ops, cfg, {2.0}), std::invalid_argument);
}

TEST_CASE("zero field is a bitwise fixed point") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 16);
    const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), 0.1);
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 0.1;

    const HermiteField zero(mesh);
    const auto [w, report] = step(zero, ops, cfg);
    CHECK((w.coeffs.array() == 0.0).all());
    CHECK(report.iterations_used == 1);
    CHECK(report.final_residual == 0.0);
}

TEST_CASE("a converged step preserves the unit-weight norm") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 64);
    const HermiteField u0 = projected_wave(mesh);
    const double dt = 0.5 * mesh.dx();
    const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), dt);
    const double n0 = l2_norm(u0);

    SchemeConfig cfg;
    cfg.dt = dt;
    cfg.t_end = dt;

    SECTION("default stopping factor keeps the drift at its own scale") {
        const auto [w, report] = step(u0, ops, cfg);
        CHECK(std::abs(l2_norm(w) - n0) <= cfg.stop_factor * mesh.dx() * n0);
    }

    SECTION("tight stopping factor keeps the drift near rounding") {
        cfg.stop_factor = 1e-10;
        const auto [w, report] = step(u0, ops, cfg);
        CHECK(std::abs(l2_norm(w) - n0) <= 1e-9);
        CHECK(report.final_residual <= 1e-10 * mesh.dx() * n0);
    }
}

TEST_CASE("the linearized iteration stays shallow at the experiment step size") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 64);
    const HermiteField u0 = projected_wave(mesh);
    const double dt = 0.5 * mesh.dx();
    const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), dt);

    SchemeConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 20.0 * dt;
    const auto result = evolve(u0, ops, cfg);
    CHECK(result.total_steps == 20);
    CHECK(result.iteration_histogram.size() <= 11);
    long counted = 0;
    for (std::size_t i = 0; i < result.iteration_histogram.size(); ++i)
        counted += result.iteration_histogram[i];
    CHECK(counted == 20);
    CHECK(result.total_iterations <= 200);
}

TEST_CASE("evolve bookkeeping") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 32);
    const HermiteField u0 = projected_wave(mesh);
    const double dt = 0.5 * mesh.dx();
    const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), dt);

    SECTION("t_end = 0 returns the initial state unchanged") {
        SchemeConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.0;
        const auto result = evolve(u0, ops, cfg, {0.0});
        CHECK(result.total_steps == 0);
        CHECK(result.t_reached == 0.0);
        REQUIRE(result.snapshots.size() == 1);
        CHECK((result.snapshots[0].coeffs.array() == u0.coeffs.array()).all());
    }

    SECTION("snapshots land on the nearest step and keep request order") {
        SchemeConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 8.0 * dt;
        const auto result =
            evolve(u0, ops, cfg, {5.0 * dt, 2.0 * dt + 0.2 * dt, 5.0 * dt});
        REQUIRE(result.snapshot_steps.size() == 3);
        CHECK(result.snapshot_steps[0] == 5);
        CHECK(result.snapshot_steps[1] == 2);
        CHECK(result.snapshot_steps[2] == 5);
        CHECK_THAT(result.snapshot_times[1], WithinAbs(2.0 * dt, 1e-14));
        CHECK((result.snapshots[0].coeffs.array() ==
               result.snapshots[2].coeffs.array())
                  .all());
    }

    SECTION("restarting from an intermediate state is bitwise equivalent") {
        SchemeConfig whole;
        whole.dt = dt;
        whole.t_end = 10.0 * dt;
        const auto full = evolve(u0, ops, whole);

        SchemeConfig head = whole;
        head.t_end = 6.0 * dt;
        const auto part1 = evolve(u0, ops, head, {6.0 * dt});
        SchemeConfig tail = whole;
        tail.t_end = 4.0 * dt;
        const auto part2 = evolve(part1.snapshots[0], ops, tail, {4.0 * dt});

        REQUIRE(full.snapshots.empty());
        const auto final_a = evolve(u0, ops, whole, {10.0 * dt});
        CHECK((final_a.snapshots[0].coeffs.array() ==
               part2.snapshots[0].coeffs.array())
                  .all());
    }
}

TEST_CASE("time-step rules") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 64);
    const HermiteField u0 = projected_wave(mesh);

    CHECK(cfl_timestep(mesh, CflMode::periodic, u0) == 0.234375);
    CHECK_THAT(cfl_timestep(mesh, CflMode::theory, u0, 2.5),
               WithinAbs(2.5 * mesh.dx() * mesh.dx(), 1e-15));
    CHECK_THROWS_AS(cfl_timestep(mesh, CflMode::theory, u0, 0.0),
                    std::invalid_argument);

    SECTION("full line rule divides by the sampled sup") {
        const UniformPeriodicMesh line(-100.0, 100.0, 512);
        const DoubleSolitonParams sol;
        const auto u = interpolate([&](double x) { return sol.value(x, 0.0); },
                                   [&](double x) { return sol.slope(x, 0.0); }, line);
        const double dt = cfl_timestep(line, CflMode::full_line, u);
        double sup = 0.0;
        for (int e = 0; e < line.num_elements(); ++e)
            for (int k = 0; k <= 64; ++k)
                sup = std::max(sup, std::abs(evaluate_local(u, e, k / 64.0)));
        CHECK_THAT(dt, WithinAbs(0.5 * line.dx() / sup, 1e-3 * dt));

        const HermiteField zero(line);
        CHECK_THROWS_AS(cfl_timestep(line, CflMode::full_line, zero),
                        std::invalid_argument);
        CHECK_THROWS_AS(cfl_timestep(mesh, CflMode::full_line, u),
                        std::invalid_argument);
    }
}

TEST_CASE("failure modes surface as typed exceptions") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 32);
    const HermiteField u0 = projected_wave(mesh);

    SECTION("iteration limit") {
        const double dt = 40.0;
        const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), dt);
        SchemeConfig cfg;
        cfg.dt = dt;
        cfg.t_end = dt;
        cfg.max_iters = 3;
        try {
            step(u0, ops, cfg);
            FAIL("expected IterationLimitExceeded");
        } catch (const IterationLimitExceeded& e) {
            CHECK(e.iterations == 3);
            CHECK(e.residual > 0.0);
        }
    }

    SECTION("non-finite state") {
        const double dt = 0.5 * mesh.dx();
        const auto ops = AssembledOperators::assemble(mesh, WeightFunction::unit(), dt);
        SchemeConfig cfg;
        cfg.dt = dt;
        cfg.t_end = dt;
        HermiteField bad = u0;
        bad.coeffs[3] = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(step(bad, ops, cfg), NonFiniteState);
    }
}

TEST_CASE("weighted norm stays bounded on a short soliton run") {
    const UniformPeriodicMesh mesh(-100.0, 100.0, 128);
    const auto w = WeightFunction::linear(120.0, 1.0);
    const DoubleSolitonParams sol;
    const auto u0 = project([&](double x) { return sol.value(x, 0.0); }, mesh);

    const double dt = cfl_timestep(mesh, CflMode::full_line, u0);
    const auto ops = AssembledOperators::assemble(mesh, w, dt);
    SchemeConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 20.0 * dt;
    const auto result = evolve(u0, ops, cfg, {20.0 * dt});

    const double before = std::sqrt(l2_inner(mesh, u0, u0, w));
    const auto& uT = result.snapshots[0];
    const double after = std::sqrt(l2_inner(mesh, uT, uT, w));
    CHECK(after <= 1.1 * before);
}
