#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bogal/exact_solutions.hpp"
#include "bogal/hermite.hpp"
#include "bogal/mesh.hpp"
#include "bogal/operators.hpp"
#include "bogal/quadrature.hpp"
#include "bogal/weight.hpp"

using namespace bogal;
using Catch::Matchers::WithinAbs;

namespace {

template <typename F>
double golden_max(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (f(c) > f(d))
            b = d;
        else
            a = c;
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(PeriodicWaveParams(0.0, 15.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicWaveParams(-0.25, 15.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicWaveParams(0.25, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicWaveParams(0.1, 15.0), std::invalid_argument);  // delta > 1
    CHECK_NOTHROW(PeriodicWaveParams(0.25, 15.0));

    CHECK_THROWS_AS(DoubleSolitonParams(0.0, 0.6, -30.0, -55.0), std::invalid_argument);
    CHECK_THROWS_AS(DoubleSolitonParams(0.3, -0.6, -30.0, -55.0), std::invalid_argument);
    CHECK_THROWS_AS(DoubleSolitonParams(0.4, 0.4, -30.0, -55.0), std::invalid_argument);
    CHECK_NOTHROW(DoubleSolitonParams(0.3, 0.6, -30.0, -55.0));
}

TEST_CASE("periodic wave invariants") {
    const PeriodicWaveParams wave(0.25, 15.0);

    SECTION("pinned extremes and mean") {
        CHECK_THAT(wave.crest(), WithinAbs(0.7730208164277146, 1e-12));
        CHECK_THAT(wave.trough(), WithinAbs(0.2269791835722854, 1e-12));
        CHECK_THAT(wave.mean(), WithinAbs(0.4188790204786391, 1e-12));
        CHECK_THAT(wave.delta(), WithinAbs(M_PI / (0.25 * 15.0), 1e-15));
    }

    SECTION("crest and trough are attained on the profile") {
        auto profile = [&](double x) { return wave.value(x, 0.0); };
        const double xc = golden_max(profile, -5.0, 5.0);
        CHECK_THAT(profile(xc), WithinAbs(wave.crest(), 1e-11));
        const double xt = golden_max([&](double x) { return -profile(x); }, 5.0, 25.0);
        CHECK_THAT(profile(xt), WithinAbs(wave.trough(), 1e-11));
    }

    SECTION("mean value over one period") {
        const auto& rule = gauss_legendre(10);
        double acc = 0.0;
        for (int s = 0; s < 64; ++s)
            acc += integrate_panel(rule, -15.0 + 30.0 * s / 64.0,
                                   -15.0 + 30.0 * (s + 1) / 64.0,
                                   [&](double x) { return wave.value(x, 0.0); });
        CHECK_THAT(acc / 30.0, WithinAbs(wave.mean(), 1e-12));
    }

    SECTION("periodicity and the traveling property") {
        for (double x : {-11.3, 0.4, 7.9})
            for (double t : {0.0, 12.5}) {
                CHECK_THAT(wave.value(x + 30.0, t), WithinAbs(wave.value(x, t), 1e-12));
                CHECK_THAT(wave.value(x, t), WithinAbs(wave.value(x - 0.25 * (t - 3.0), 3.0), 1e-12));
            }
    }

    SECTION("slope matches a finite difference of the value") {
        const double h = 1e-6;
        for (double x : {-9.7, -0.3, 2.2, 13.4}) {
            const double fd =
                (wave.value(x + h, 1.7) - wave.value(x - h, 1.7)) / (2.0 * h);
            CHECK_THAT(wave.slope(x, 1.7), WithinAbs(fd, 1e-7));
        }
    }

    SECTION("phase shifts the profile") {
        const PeriodicWaveParams shifted(0.25, 15.0, 2.5);
        for (double x : {-4.0, 0.0, 8.1})
            CHECK_THAT(shifted.value(x + 2.5, 1.1), WithinAbs(wave.value(x, 1.1), 1e-13));
        CHECK_THAT(shifted.value(2.5, 0.0), WithinAbs(wave.crest(), 1e-12));
    }
}

TEST_CASE("double soliton invariants") {
    const DoubleSolitonParams sol(0.3, 0.6, -30.0, -55.0);

    SECTION("pinned point values") {
        CHECK_THAT(sol.value(0.0, 0.0), WithinAbs(0.018104547386315342, 1e-12));
        CHECK_THAT(sol.value(3.2, 7.1), WithinAbs(0.017139520453063943, 1e-12));
    }

    SECTION("far-field decay") {
        CHECK(std::abs(sol.value(1e6, 0.0)) <= 1e-9);
        CHECK(std::abs(sol.value(-1e6, 0.0)) <= 1e-9);
    }

    SECTION("translation covariance") {
        const double s = 13.7;
        const DoubleSolitonParams moved(0.3, 0.6, -30.0 + s, -55.0 + s);
        for (double x : {-60.0, -28.3, 0.0, 40.0})
            for (double t : {0.0, 90.0}) {
                CHECK_THAT(moved.value(x + s, t), WithinAbs(sol.value(x, t), 1e-12));
                CHECK_THAT(moved.slope(x + s, t), WithinAbs(sol.slope(x, t), 1e-12));
            }
    }

    SECTION("slope matches a finite difference of the value") {
        const double h = 1e-6;
        for (double x : {-56.6, -30.0, -28.3, 5.0})
            for (double t : {0.0, 45.0}) {
                const double fd = (sol.value(x + h, t) - sol.value(x - h, t)) / (2.0 * h);
                CHECK_THAT(sol.slope(x, t), WithinAbs(fd, 1e-7));
            }
    }

    SECTION("initial profile peaks") {
        auto u0 = [&](double x) { return sol.value(x, 0.0); };
        const double x_tall = golden_max(u0, -60.0, -52.0);
        CHECK_THAT(x_tall, WithinAbs(-56.66049, 1e-4));
        CHECK_THAT(u0(x_tall), WithinAbs(2.28295460741391, 1e-10));
        const double x_small = golden_max(u0, -33.0, -24.0);
        CHECK_THAT(x_small, WithinAbs(-28.34136, 1e-4));
        CHECK_THAT(u0(x_small), WithinAbs(1.2450213, 1e-6));
    }

    SECTION("post-interaction peaks travel at the soliton speeds") {
        auto at = [&](double t) {
            return [&, t](double x) { return sol.value(x, t); };
        };
        const double slow_150 = golden_max(at(150.0), 5.0, 21.0);
        const double fast_150 = golden_max(at(150.0), 29.0, 45.0);
        CHECK_THAT(slow_150, WithinAbs(12.99456, 1e-4));
        CHECK_THAT(fast_150, WithinAbs(37.00833, 1e-4));

        const double slow_300 = golden_max(at(300.0), 50.0, 66.0);
        const double fast_300 = golden_max(at(300.0), 119.0, 135.0);
        CHECK(std::abs((slow_300 - slow_150) / 150.0 - 0.3) <= 0.05 * 0.3);
        CHECK(std::abs((fast_300 - fast_150) / 150.0 - 0.6) <= 0.05 * 0.6);
    }
}

TEST_CASE("periodic wave satisfies the semi-discrete system under refinement") {
    const PeriodicWaveParams wave(0.25, 15.0);
    const auto unit = WeightFunction::unit();
    const double t = 0.37;
    const double h = 1e-5;

    auto weak_residual = [&](int n) {
        const UniformPeriodicMesh mesh(-15.0, 15.0, n);
        auto coeffs_at = [&](double s) {
            return interpolate([&](double x) { return wave.value(x, s); },
                               [&](double x) { return wave.slope(x, s); }, mesh)
                .coeffs;
        };
        const Eigen::MatrixXd m = assemble_weighted_mass(mesh, unit);
        const Eigen::MatrixXd hs = assemble_hilbert_stiffness(mesh, unit);
        const Eigen::VectorXd c = coeffs_at(t);
        const Eigen::VectorXd cdot = (coeffs_at(t + h) - coeffs_at(t - h)) / (2.0 * h);
        HermiteField u(mesh);
        u.coeffs = c;
        const Eigen::VectorXd r =
            m * cdot + hs * c - 0.5 * nonlinear_form(u, unit);
        HermiteField res(mesh);
        res.coeffs = Eigen::PartialPivLU<Eigen::MatrixXd>(m).solve(r);
        return l2_norm(res);
    };

    const double r64 = weak_residual(64);
    const double r128 = weak_residual(128);
    const double r256 = weak_residual(256);
    INFO("residuals " << r64 << " " << r128 << " " << r256);
    CHECK(std::log2(r64 / r128) >= 1.85);
    CHECK(std::log2(r128 / r256) >= 1.9);
}
