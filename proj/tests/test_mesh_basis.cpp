#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bogal/hermite.hpp"
#include "bogal/mesh.hpp"

using namespace bogal;
using Catch::Matchers::WithinAbs;

TEST_CASE("mesh construction validates its inputs") {
    CHECK_THROWS_AS(UniformPeriodicMesh(0.0, 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(UniformPeriodicMesh(1.0, -1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(UniformPeriodicMesh(-15.0, 15.0, 3), std::invalid_argument);
    CHECK_NOTHROW(UniformPeriodicMesh(-15.0, 15.0, 4));
}

TEST_CASE("nodes, wrapping and element lookup") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 8);
    CHECK(mesh.dx() == 3.75);
    CHECK(mesh.period() == 30.0);
    CHECK(mesh.node(0) == -15.0);
    CHECK(mesh.node(4) == 0.0);

    CHECK_THAT(mesh.wrap(16.0), WithinAbs(-14.0, 1e-12));
    CHECK_THAT(mesh.wrap(-16.0), WithinAbs(14.0, 1e-12));
    CHECK(mesh.wrap(45.0) == -15.0);
    CHECK(mesh.wrap(7.0) == 7.0);
    for (double x : {-15.0, 14.999999, 1e9, -1e9}) {
        const double y = mesh.wrap(x);
        CHECK(y >= mesh.left());
        CHECK(y < mesh.right());
    }

    CHECK(mesh.element_of(-15.0) == 0);
    CHECK(mesh.element_of(-11.3) == 0);
    CHECK(mesh.element_of(0.1) == 4);
    CHECK(mesh.element_of(14.99) == 7);

    const auto xs = mesh.node_coordinates();
    REQUIRE(xs.size() == 8);
    CHECK(xs.front() == -15.0);
    CHECK_THAT(xs.back(), WithinAbs(11.25, 1e-12));
}

TEST_CASE("shape functions satisfy the Hermite cardinality conditions") {
    CHECK(shape_value(ShapeKind::value, 0.0) == 1.0);
    CHECK(shape_value(ShapeKind::value, 1.0) == 0.0);
    CHECK(shape_value(ShapeKind::value, -1.0) == 0.0);
    CHECK(shape_value(ShapeKind::value, 0.0, 1) == 0.0);
    CHECK(shape_value(ShapeKind::slope, 0.0) == 0.0);
    CHECK(shape_value(ShapeKind::slope, 0.0, 1) == 1.0);
    CHECK(shape_value(ShapeKind::slope, 1.0) == 0.0);
    CHECK(shape_value(ShapeKind::slope, -1.0, 1) == 0.0);
    CHECK(shape_value(ShapeKind::value, 1.7) == 0.0);
    CHECK(shape_value(ShapeKind::slope, -2.0, 2) == 0.0);

    // second derivative of the slope shape jumps across y=0; y=0 takes the
    // right-hand branch
    CHECK(shape_value(ShapeKind::slope, 0.0, 2) == -4.0);
    CHECK_THAT(shape_value(ShapeKind::slope, -1e-12, 2), WithinAbs(4.0, 1e-10));

    CHECK_THROWS_AS(shape_value(ShapeKind::value, 0.5, 3), std::invalid_argument);
}

TEST_CASE("value shapes form a partition of unity") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 8);
    HermiteField ones(mesh);
    for (int j = 0; j < 8; ++j) ones.coeffs[2 * j] = 1.0;
    for (double x : {-15.0, -14.2, -3.3, 0.0, 0.9, 7.77, 14.999}) {
        CHECK_THAT(evaluate(ones, x), WithinAbs(1.0, 1e-14));
        CHECK_THAT(evaluate(ones, x, 1), WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("a single value dof is cardinal at the nodes") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 8);
    HermiteField u(mesh);
    u.coeffs[2 * 3] = 1.0;
    for (int k = 0; k < 8; ++k) {
        CHECK_THAT(evaluate(u, mesh.node(k)), WithinAbs(k == 3 ? 1.0 : 0.0, 1e-15));
        CHECK_THAT(evaluate(u, mesh.node(k), 1), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("local cubics are reproduced exactly") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 8);
    const double dx = mesh.dx();
    // p(x) = (x - x_0)^3 expressed through the element dofs of element 0
    HermiteField u(mesh);
    u.coeffs[0] = 0.0;
    u.coeffs[1] = 0.0;
    u.coeffs[2] = dx * dx * dx;
    u.coeffs[3] = dx * 3.0 * dx * dx;
    const double t = 0.37;
    const double s = t * dx;
    CHECK_THAT(evaluate_local(u, 0, t), WithinAbs(s * s * s, 1e-12));
    CHECK_THAT(evaluate_local(u, 0, t, 1), WithinAbs(3.0 * s * s, 1e-11));
    CHECK_THAT(evaluate_local(u, 0, t, 2), WithinAbs(6.0 * s, 1e-10));
}

TEST_CASE("fields are C1 across element boundaries") {
    const UniformPeriodicMesh mesh(-7.0, 9.0, 8);
    HermiteField u(mesh);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < u.coeffs.size(); ++i) u.coeffs[i] = dist(rng);
    for (int j = 0; j < 8; ++j) {
        const int prev = (j + 7) % 8;
        for (int d = 0; d < 2; ++d)
            CHECK_THAT(evaluate_local(u, prev, 1.0, d),
                       WithinAbs(evaluate_local(u, j, 0.0, d), 1e-12));
    }
}

TEST_CASE("interpolation fills nodal values and scaled slopes") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 16);
    const auto c = interpolate([](double) { return 4.5; }, [](double) { return 0.0; },
                               mesh);
    for (int j = 0; j < 16; ++j) {
        CHECK(c.coeffs[2 * j] == 4.5);
        CHECK(c.coeffs[2 * j + 1] == 0.0);
    }

    auto f = [](double x) { return std::sin(M_PI * x / 15.0); };
    auto df = [](double x) { return M_PI / 15.0 * std::cos(M_PI * x / 15.0); };
    const auto s = interpolate(f, df, mesh);
    for (int j = 0; j < 16; ++j) {
        const double x = mesh.node(j);
        CHECK(s.coeffs[2 * j] == f(x));
        CHECK_THAT(evaluate(s, x), WithinAbs(f(x), 1e-15));
        CHECK_THAT(evaluate(s, x, 1), WithinAbs(df(x), 1e-13));
    }
    // fourth-order accuracy at an off-node point, loose bound
    CHECK_THAT(evaluate(s, 0.77), WithinAbs(f(0.77), 1e-4));
}

TEST_CASE("element dofs wrap around the seam") {
    const UniformPeriodicMesh mesh(-15.0, 15.0, 8);
    const auto dofs = element_dofs(mesh, 7);
    CHECK(dofs[0] == 14);
    CHECK(dofs[1] == 15);
    CHECK(dofs[2] == 0);
    CHECK(dofs[3] == 1);
}
