#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>

#include "bogal/mesh.hpp"

namespace bogal {

/// The two cubic Hermite cardinal shapes on the reference interval [-1, 1]:
/// `value` is 1 with zero slope at y=0, `slope` is 0 with unit slope; both
/// vanish together with their first derivative at y=±1.
enum class ShapeKind { value, slope };

/// Evaluate a reference shape or one of its first two derivatives. Outside
/// |y|<=1 everything is zero. Second derivatives are one-sided at the kinks
/// of |y|; the right-hand branch is used at y=0.
inline double shape_value(ShapeKind kind, double y, int derivative_order = 0) {
    const double a = std::abs(y);
    if (a > 1.0) return 0.0;
    if (kind == ShapeKind::value) {
        switch (derivative_order) {
            case 0: return 1.0 + y * y * (2.0 * a - 3.0);
            case 1: return 6.0 * y * (a - 1.0);
            case 2: return 6.0 * (2.0 * a - 1.0);
        }
    } else {
        const double s = y >= 0.0 ? 1.0 : -1.0;
        switch (derivative_order) {
            case 0: return y * (1.0 - a) * (1.0 - a);
            case 1: return (1.0 - a) * (1.0 - 3.0 * a);
            case 2: return s * (6.0 * a - 4.0);
        }
    }
    throw std::invalid_argument("shape_value: derivative_order must be 0, 1 or 2");
}

/// A member of the C^1 cubic Hermite space on a periodic mesh.
/// coeffs[2j] is the function value at node j; coeffs[2j+1] is the node
/// derivative pre-scaled by dx (the coefficient of the slope basis function).
struct HermiteField {
    const UniformPeriodicMesh* mesh = nullptr;
    Eigen::VectorXd coeffs;

    HermiteField() = default;
    explicit HermiteField(const UniformPeriodicMesh& m)
        : mesh(&m), coeffs(Eigen::VectorXd::Zero(2 * m.num_elements())) {}
};

/// The four shapes alive on one element at local coordinate t in [0, 1],
/// ordered (value, slope) at the left node then (value, slope) at the right.
inline std::array<double, 4> local_shapes(double t, int derivative_order = 0) {
    return {shape_value(ShapeKind::value, t, derivative_order),
            shape_value(ShapeKind::slope, t, derivative_order),
            shape_value(ShapeKind::value, t - 1.0, derivative_order),
            shape_value(ShapeKind::slope, t - 1.0, derivative_order)};
}

/// Global degree-of-freedom indices of the element's four local shapes.
inline std::array<int, 4> element_dofs(const UniformPeriodicMesh& mesh, int element) {
    const int n = mesh.num_elements();
    const int j0 = element % n;
    const int j1 = (element + 1) % n;
    return {2 * j0, 2 * j0 + 1, 2 * j1, 2 * j1 + 1};
}

/// Evaluate a field (or derivative) inside element e at local coordinate t.
inline double evaluate_local(const HermiteField& u, int element, double t,
                             int derivative_order = 0) {
    const auto dofs = element_dofs(*u.mesh, element);
    const auto s = local_shapes(t, derivative_order);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += u.coeffs[dofs[i]] * s[i];
    double scale = 1.0;
    for (int d = 0; d < derivative_order; ++d) scale /= u.mesh->dx();
    return acc * scale;
}

/// Evaluate a field anywhere on the line (periodic reduction applied).
inline double evaluate(const HermiteField& u, double x, int derivative_order = 0) {
    const UniformPeriodicMesh& m = *u.mesh;
    const double y = m.wrap(x);
    const int e = m.element_of(y);
    const double t = (y - m.node(e)) / m.dx();
    return evaluate_local(u, e, t, derivative_order);
}

/// Hermite interpolant: matches u and u' at every node.
template <class F, class DF>
HermiteField interpolate(F&& u, DF&& du, const UniformPeriodicMesh& mesh) {
    HermiteField field(mesh);
    for (int j = 0; j < mesh.num_elements(); ++j) {
        const double xj = mesh.node(j);
        field.coeffs[2 * j] = u(xj);
        field.coeffs[2 * j + 1] = mesh.dx() * du(xj);
    }
    return field;
}

}  // namespace bogal
