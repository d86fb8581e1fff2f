#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bogal/hermite.hpp"
#include "bogal/mesh.hpp"
#include "bogal/operators.hpp"
#include "bogal/quadrature.hpp"
#include "bogal/weight.hpp"

namespace bogal {

/// Weighted L² projection of a callable onto the discrete space:
/// ⟨u − Pu, φ v⟩ = 0 for all basis functions v. The mass matrix of a
/// positive weight is symmetric positive definite, so Cholesky applies.
template <class F>
HermiteField project(F&& u, const UniformPeriodicMesh& mesh,
                     const WeightFunction& w = WeightFunction::unit(),
                     int panels_per_element = 4,
                     const QuadratureRule& rule = gauss_legendre(8)) {
    if (panels_per_element < 1)
        throw std::invalid_argument("project: panels_per_element must be >= 1");
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
    for (int e = 0; e < n; ++e) {
        const double xa = mesh.node(e);
        const auto dofs = element_dofs(mesh, e);
        auto bounds = detail::weight_breaks_in(w, xa, xa + dx);
        for (int k = 1; k < panels_per_element; ++k)
            bounds.push_back(xa + dx * k / panels_per_element);
        const auto pts = detail::panel_bounds(xa, xa + dx, std::move(bounds));
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const double mid = 0.5 * (pts[k] + pts[k + 1]);
            const double hw = 0.5 * (pts[k + 1] - pts[k]);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = mid + hw * rule.nodes[i];
                const double wq =
                    hw * rule.weights[i] * w.eval(x).first * u(mesh.wrap(x));
                const auto s0 = local_shapes((x - xa) / dx);
                for (int r = 0; r < 4; ++r) rhs[dofs[r]] += wq * s0[r];
            }
        }
    }
    const Eigen::MatrixXd mass = assemble_weighted_mass(mesh, w, rule);
    HermiteField out(mesh);
    out.coeffs = Eigen::LLT<Eigen::MatrixXd>(mass).solve(rhs);
    return out;
}

/// Relative L² distance between a discrete field's derivative_order-th
/// derivative and a callable (which must itself supply that derivative).
/// Falls back to the absolute norm when the callable is identically zero.
template <class F>
double projection_error(const HermiteField& uh, F&& exact,
                        int derivative_order = 0, int panels_per_element = 8,
                        const QuadratureRule& rule = gauss_legendre(8)) {
    if (panels_per_element < 1)
        throw std::invalid_argument("projection_error: panels_per_element must be >= 1");
    const UniformPeriodicMesh& mesh = *uh.mesh;
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    double num = 0.0, den = 0.0;
    for (int e = 0; e < n; ++e) {
        const double xa = mesh.node(e);
        for (int k = 0; k < panels_per_element; ++k) {
            const double a = xa + dx * k / panels_per_element;
            const double b = xa + dx * (k + 1) / panels_per_element;
            const double mid = 0.5 * (a + b);
            const double hw = 0.5 * (b - a);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = mid + hw * rule.nodes[i];
                const double wq = hw * rule.weights[i];
                const double ue = exact(mesh.wrap(x));
                const double uv =
                    evaluate_local(uh, e, (x - xa) / dx, derivative_order);
                num += wq * (uv - ue) * (uv - ue);
                den += wq * ue * ue;
            }
        }
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace bogal
