#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bogal/hermite.hpp"
#include "bogal/mesh.hpp"
#include "bogal/quadrature.hpp"
#include "bogal/weight.hpp"

namespace bogal {

namespace detail {

/// Panel bounds of [lo, hi] split at the interior breakpoints.
inline std::vector<double> panel_bounds(double lo, double hi,
                                        std::vector<double> breaks) {
    const double tol = 1e-13 * (hi - lo);
    std::vector<double> pts{lo, hi};
    for (double b : breaks)
        if (b > lo + tol && b < hi - tol) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [tol](double a, double b) { return b - a <= tol; }),
              pts.end());
    return pts;
}

/// Weight breakpoints strictly inside [lo, hi]. Weighted forms always read
/// the weight in interval coordinates, so breakpoints are never wrapped.
inline std::vector<double> weight_breaks_in(const WeightFunction& w,
                                            double lo, double hi) {
    std::vector<double> out;
    for (double b : w.breakpoints())
        if (b > lo && b < hi) out.push_back(b);
    return out;
}

inline double circle_distance(double d, double period) {
    return std::abs(std::remainder(d, period));
}

/// G(σ) = ∫ W(x) · b'_{q,β}(x − σ) dx for an outer factor W supported on
/// [outer_lo, outer_hi]. The periodic inner function is represented by its
/// single image nearest the outer support (supports of width 2·dx cannot
/// meet a second image when N ≥ 4).
template <class Outer>
double shifted_inner_correlation(const UniformPeriodicMesh& mesh, int q,
                                 ShapeKind beta, double sigma,
                                 double outer_lo, double outer_hi,
                                 const std::vector<double>& outer_breaks,
                                 Outer&& outer_eval,
                                 const QuadratureRule& outer_rule) {
    const double dx = mesh.dx();
    const double p = mesh.period();
    double c = mesh.node(q) + sigma;
    c += std::round((0.5 * (outer_lo + outer_hi) - c) / p) * p;
    const double lo = std::max(outer_lo, c - dx);
    const double hi = std::min(outer_hi, c + dx);
    if (!(hi - lo > 0.0)) return 0.0;
    std::vector<double> brk = outer_breaks;
    brk.push_back(c);
    double acc = 0.0;
    const auto bounds = panel_bounds(lo, hi, std::move(brk));
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k)
        acc += integrate_panel(outer_rule, bounds[k], bounds[k + 1], [&](double x) {
            return outer_eval(x) * shape_value(beta, (x - c) / dx, 1) / dx;
        });
    return acc;
}

/// ⟨H_per b'_{q,β}, W⟩ = ∫₀^L [G(s) − G(−s)] · cot(πs/2L)/(2L) ds.
/// The odd pairing cancels the kernel pole, so each s-panel is analytic and
/// plain Gauss quadrature applies; panels are split at the kinks of G and
/// kept narrower than their distance to s=0. The quadrature error of the
/// s-integral is antisymmetric under (p,q) exchange, which keeps the
/// assembled unit-weight matrix skew-symmetric to rounding.
template <class Outer>
double hilbert_row_integral(const UniformPeriodicMesh& mesh, int q,
                            ShapeKind beta,
                            double outer_lo, double outer_hi,
                            const std::vector<double>& outer_breaks,
                            Outer&& outer_eval,
                            const QuadratureRule& inner_rule,
                            const QuadratureRule& outer_rule) {
    const double dx = mesh.dx();
    const double p = mesh.period();
    const double half = 0.5 * p;
    const double xq = mesh.node(q);
    const double outer_center = 0.5 * (outer_lo + outer_hi);
    const double reach = 0.5 * (outer_hi - outer_lo) + dx + 1e-12 * p;

    std::vector<double> sbrk{0.0, half};
    auto add_sigma = [&](double sigma) {
        double f = std::fmod(sigma, p);
        if (f < 0.0) f += p;
        for (double cand : {f, p - f})
            if (cand > 1e-13 * p && cand < half - 1e-13 * p) sbrk.push_back(cand);
    };
    {
        std::vector<double> all = outer_breaks;
        all.push_back(outer_lo);
        all.push_back(outer_hi);
        for (double b : all)
            for (double m : {-dx, 0.0, dx}) add_sigma(b - m - xq);
    }
    std::sort(sbrk.begin(), sbrk.end());
    sbrk.erase(std::unique(sbrk.begin(), sbrk.end(),
                           [&](double a, double b) { return b - a <= 1e-12 * p; }),
               sbrk.end());

    const auto paired = [&](double s) {
        const double gp = shifted_inner_correlation(mesh, q, beta, s, outer_lo,
                                                    outer_hi, outer_breaks,
                                                    outer_eval, outer_rule);
        const double gm = shifted_inner_correlation(mesh, q, beta, -s, outer_lo,
                                                    outer_hi, outer_breaks,
                                                    outer_eval, outer_rule);
        const double arg = M_PI * s / p;
        return (gp - gm) * (std::cos(arg) / std::sin(arg)) / p;
    };

    double acc = 0.0;
    std::vector<std::pair<double, double>> panels;
    for (std::size_t k = 0; k + 1 < sbrk.size(); ++k)
        panels.emplace_back(sbrk[k], sbrk[k + 1]);
    while (!panels.empty()) {
        const auto [a, b] = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (a + b);
        const double swing = 0.5 * (b - a);
        const bool live_pos =
            circle_distance(xq + mid - outer_center, p) - swing < reach;
        const bool live_neg =
            circle_distance(xq - mid - outer_center, p) - swing < reach;
        if (!live_pos && !live_neg) continue;
        if (a > 0.0 && (b - a) > 0.55 * a) {
            panels.emplace_back(a, mid);
            panels.emplace_back(mid, b);
            continue;
        }
        acc += (a == 0.0) ? pv_integrate_symmetric(inner_rule, b, paired)
                          : integrate_panel(inner_rule, a, b, paired);
    }
    return acc;
}

/// One unit-weight entry of the periodic form evaluated without the
/// generator table.
inline double hilbert_entry_direct(const UniformPeriodicMesh& mesh,
                                   int p_row, ShapeKind alpha,
                                   int q_col, ShapeKind beta,
                                   const QuadratureRule& inner_rule,
                                   const QuadratureRule& outer_rule) {
    const double dx = mesh.dx();
    const double xp = mesh.node(p_row);
    return hilbert_row_integral(
        mesh, q_col, beta, xp - dx, xp + dx, {xp},
        [&](double x) { return shape_value(alpha, (x - xp) / dx, 1) / dx; },
        inner_rule, outer_rule);
}

/// Translation-invariant unit-weight generators for node offset
/// k = (p−q) mod N: plain[k][2α+β] = ⟨H_per b'_{q,β}, b'_{p,α}⟩.
inline std::vector<std::array<double, 4>> compute_hilbert_generators(
    const UniformPeriodicMesh& mesh, const QuadratureRule& inner_rule,
    const QuadratureRule& outer_rule) {
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    const int p_ref = 1;  // any node whose support avoids the seam
    const double xp = mesh.node(p_ref);
    std::vector<std::array<double, 4>> plain(n, std::array<double, 4>{});
    const std::vector<double> breaks{xp};
    for (int k = 0; k < n; ++k) {
        const int q = ((p_ref - k) % n + n) % n;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const ShapeKind alpha = a == 0 ? ShapeKind::value : ShapeKind::slope;
                const ShapeKind beta = b == 0 ? ShapeKind::value : ShapeKind::slope;
                plain[k][2 * a + b] = hilbert_row_integral(
                    mesh, q, beta, xp - dx, xp + dx, breaks,
                    [&](double x) { return shape_value(alpha, (x - xp) / dx, 1) / dx; },
                    inner_rule, outer_rule);
            }
    }
    return plain;
}

/// Restriction of basis function j to the fundamental interval, in interval
/// coordinates; support is [center + t_lo·dx, center + t_hi·dx]. Only the
/// function at the left endpoint straddles the seam and splits in two.
struct SupportPiece {
    double center;
    double t_lo, t_hi;
};

inline std::vector<SupportPiece> basis_pieces(const UniformPeriodicMesh& mesh,
                                              int j) {
    if (j == 0)
        return {{mesh.left(), 0.0, 1.0},
                {mesh.left() + mesh.period(), -1.0, 0.0}};
    return {{mesh.node(j), -1.0, 1.0}};
}

/// Interval-window pairing of one outer factor W on [a_lo, a_hi] against the
/// derivative of one source piece:
///   ∫₀^{P/2} [G(s) − G(−s)] · cot(πs/P)/P ds,
/// where G(σ) is the plain line correlation ∫ W(x) b'(x−σ) dx with no
/// periodic images. Sources farther than half a period never enter, and the
/// kernel vanishes at the window edge, so truncation adds no singularity.
template <class Outer>
double line_pair_integral(const UniformPeriodicMesh& mesh,
                          double a_lo, double a_hi,
                          const std::vector<double>& a_breaks,
                          Outer&& outer_eval,
                          const SupportPiece& src, ShapeKind beta,
                          const QuadratureRule& inner_rule,
                          const QuadratureRule& outer_rule) {
    const double dx = mesh.dx();
    const double per = mesh.period();
    const double half = 0.5 * per;
    const double b_lo = src.center + src.t_lo * dx;
    const double b_hi = src.center + src.t_hi * dx;
    std::vector<double> b_breaks{b_lo, b_hi};
    if (src.t_lo < 0.0 && src.t_hi > 0.0) b_breaks.push_back(src.center);

    auto correlation = [&](double sigma) {
        const double lo = std::max(a_lo, b_lo + sigma);
        const double hi = std::min(a_hi, b_hi + sigma);
        if (!(hi - lo > 0.0)) return 0.0;
        std::vector<double> cuts = a_breaks;
        for (double b : b_breaks) cuts.push_back(b + sigma);
        double g = 0.0;
        const auto bounds = panel_bounds(lo, hi, std::move(cuts));
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k)
            g += integrate_panel(outer_rule, bounds[k], bounds[k + 1], [&](double x) {
                return outer_eval(x) *
                       shape_value(beta, (x - sigma - src.center) / dx, 1) / dx;
            });
        return g;
    };
    auto paired = [&](double s) {
        const double arg = M_PI * s / per;
        return (correlation(s) - correlation(-s)) *
               (std::cos(arg) / std::sin(arg)) / per;
    };

    std::vector<double> sbrk{0.0, half};
    for (double ba : a_breaks)
        for (double bb : b_breaks) {
            const double v = std::abs(ba - bb);
            if (v > 1e-13 * per && v < half - 1e-13 * per) sbrk.push_back(v);
        }
    std::sort(sbrk.begin(), sbrk.end());
    sbrk.erase(std::unique(sbrk.begin(), sbrk.end(),
                           [&](double a, double b) { return b - a <= 1e-12 * per; }),
               sbrk.end());

    const double sigma_min = a_lo - b_hi;
    const double sigma_max = a_hi - b_lo;
    double acc = 0.0;
    std::vector<std::pair<double, double>> panels;
    for (std::size_t k = 0; k + 1 < sbrk.size(); ++k)
        panels.emplace_back(sbrk[k], sbrk[k + 1]);
    while (!panels.empty()) {
        const auto [a, b] = panels.back();
        panels.pop_back();
        const bool live_pos = b >= sigma_min && a <= sigma_max;
        const bool live_neg = -a >= sigma_min && -b <= sigma_max;
        if (!live_pos && !live_neg) continue;
        if (a > 0.0 && (b - a) > 0.55 * a) {
            const double mid = 0.5 * (a + b);
            panels.emplace_back(a, mid);
            panels.emplace_back(mid, b);
            continue;
        }
        acc += (a == 0.0) ? pv_integrate_symmetric(inner_rule, b, paired)
                          : integrate_panel(inner_rule, a, b, paired);
    }
    return acc;
}

/// One interval-window entry; the weight is evaluated in interval coordinates
/// on each support piece of the row function.
inline double line_hilbert_entry(const UniformPeriodicMesh& mesh,
                                 const WeightFunction& w,
                                 int p_row, ShapeKind alpha,
                                 int q_col, ShapeKind beta,
                                 const QuadratureRule& inner_rule,
                                 const QuadratureRule& outer_rule) {
    const double dx = mesh.dx();
    double acc = 0.0;
    for (const SupportPiece& piece : basis_pieces(mesh, p_row)) {
        const double a_lo = piece.center + piece.t_lo * dx;
        const double a_hi = piece.center + piece.t_hi * dx;
        std::vector<double> a_breaks{a_lo, a_hi};
        if (piece.t_lo < 0.0 && piece.t_hi > 0.0) a_breaks.push_back(piece.center);
        for (double b : weight_breaks_in(w, a_lo, a_hi)) a_breaks.push_back(b);
        auto outer_eval = [&](double x) {
            const auto [phi, dphi] = w.eval(x);
            const double y = (x - piece.center) / dx;
            return dphi * shape_value(alpha, y) + phi * shape_value(alpha, y, 1) / dx;
        };
        for (const SupportPiece& src : basis_pieces(mesh, q_col))
            acc += line_pair_integral(mesh, a_lo, a_hi, a_breaks, outer_eval,
                                      src, beta, inner_rule, outer_rule);
    }
    return acc;
}

/// Signed-offset generators for the interval-window form. For interior rows
/// and columns the entry with an affine weight is
///   φ(x_p)·plain + slope·(moment + value),
/// and all three integrals depend on x_p − x_q only:
///   plain[k]  = ⟨H b'_{q,β}, b'_{p,α}⟩
///   moment[k] = ⟨H b'_{q,β}, (x−x_p) b'_{p,α}⟩
///   value[k]  = ⟨H b'_{q,β}, b_{p,α}⟩,  k = p − q.
struct LineHilbertGenerators {
    int offset0 = 0;  // table index of k = 0
    std::vector<std::array<double, 4>> plain, moment, value;
};

inline LineHilbertGenerators compute_line_hilbert_generators(
    const UniformPeriodicMesh& mesh, const QuadratureRule& inner_rule,
    const QuadratureRule& outer_rule) {
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    LineHilbertGenerators gen;
    gen.offset0 = n - 2;
    gen.plain.assign(2 * n - 3, std::array<double, 4>{});
    gen.moment.assign(2 * n - 3, std::array<double, 4>{});
    gen.value.assign(2 * n - 3, std::array<double, 4>{});
    for (int k = -(n - 2); k <= n - 2; ++k) {
        if (std::abs(k) * dx > 0.5 * mesh.period() + 2.0 * dx) continue;
        const int q = k >= 0 ? 1 : 1 - k;
        const int p = q + k;
        const double xp = mesh.node(p);
        const SupportPiece src{mesh.node(q), -1.0, 1.0};
        const std::vector<double> a_breaks{xp - dx, xp, xp + dx};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const ShapeKind alpha = a == 0 ? ShapeKind::value : ShapeKind::slope;
                const ShapeKind beta = b == 0 ? ShapeKind::value : ShapeKind::slope;
                const int idx = 2 * a + b;
                gen.plain[k + gen.offset0][idx] = line_pair_integral(
                    mesh, xp - dx, xp + dx, a_breaks,
                    [&](double x) { return shape_value(alpha, (x - xp) / dx, 1) / dx; },
                    src, beta, inner_rule, outer_rule);
                gen.moment[k + gen.offset0][idx] = line_pair_integral(
                    mesh, xp - dx, xp + dx, a_breaks,
                    [&](double x) {
                        return (x - xp) * shape_value(alpha, (x - xp) / dx, 1) / dx;
                    },
                    src, beta, inner_rule, outer_rule);
                gen.value[k + gen.offset0][idx] = line_pair_integral(
                    mesh, xp - dx, xp + dx, a_breaks,
                    [&](double x) { return shape_value(alpha, (x - xp) / dx); },
                    src, beta, inner_rule, outer_rule);
            }
    }
    return gen;
}

}  // namespace detail

/// Weighted mass matrix ⟨v_j, φ v_i⟩ (row i, column j), stored dense.
inline Eigen::MatrixXd assemble_weighted_mass(
    const UniformPeriodicMesh& mesh, const WeightFunction& w,
    const QuadratureRule& outer_rule = gauss_legendre(8)) {
    w.validate_on(mesh.left(), mesh.right());
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int e = 0; e < n; ++e) {
        const double xa = mesh.node(e);
        const auto dofs = element_dofs(mesh, e);
        const auto bounds = detail::panel_bounds(
            xa, xa + dx, detail::weight_breaks_in(w, xa, xa + dx));
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
            const double hw = 0.5 * (bounds[k + 1] - bounds[k]);
            for (std::size_t i = 0; i < outer_rule.nodes.size(); ++i) {
                const double x = mid + hw * outer_rule.nodes[i];
                const double wq = hw * outer_rule.weights[i] * w.eval(x).first;
                const auto s = local_shapes((x - xa) / dx);
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c)
                        m(dofs[r], dofs[c]) += wq * s[r] * s[c];
            }
        }
    }
    return m;
}

/// Weighted stiffness ⟨v_j', (φ v_i)'⟩ — diagnostic counterpart of the
/// Hilbert matrix used by the Fourier-multiplier checks.
inline Eigen::MatrixXd assemble_weighted_stiffness(
    const UniformPeriodicMesh& mesh, const WeightFunction& w,
    const QuadratureRule& outer_rule = gauss_legendre(8)) {
    w.validate_on(mesh.left(), mesh.right());
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int e = 0; e < n; ++e) {
        const double xa = mesh.node(e);
        const auto dofs = element_dofs(mesh, e);
        const auto bounds = detail::panel_bounds(
            xa, xa + dx, detail::weight_breaks_in(w, xa, xa + dx));
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
            const double hw = 0.5 * (bounds[k + 1] - bounds[k]);
            for (std::size_t i = 0; i < outer_rule.nodes.size(); ++i) {
                const double x = mid + hw * outer_rule.nodes[i];
                const double wq = hw * outer_rule.weights[i];
                const auto [phi, dphi] = w.eval(x);
                const auto s0 = local_shapes((x - xa) / dx);
                const auto s1 = local_shapes((x - xa) / dx, 1);
                for (int r = 0; r < 4; ++r) {
                    const double test = dphi * s0[r] + phi * s1[r] / dx;
                    for (int c = 0; c < 4; ++c)
                        m(dofs[r], dofs[c]) += wq * test * s1[c] / dx;
                }
            }
        }
    }
    return m;
}

/// Dense Hilbert stiffness ⟨H v_j', (φ v_i)'⟩.
///
/// The unit weight selects the periodic transform; the matrix assembles from
/// translation-invariant generators, or entrywise under force_direct. Any
/// other weight selects the interval-window form of the truncated-line
/// problem: fields are read as functions on the interval extended by zero,
/// the transform integrates over the single kernel window |y| ≤ period/2
/// (where cot vanishes at the edges), and the weight stays single-valued in
/// interval coordinates. Interior entries again depend only on the node
/// offset, so affine weights use signed-offset generators with direct
/// evaluation for the seam row and column; other weights assemble entrywise.
inline Eigen::MatrixXd assemble_hilbert_stiffness(
    const UniformPeriodicMesh& mesh, const WeightFunction& w,
    const QuadratureRule& inner_rule = gauss_legendre(7),
    const QuadratureRule& outer_rule = gauss_legendre(8),
    bool force_direct = false) {
    w.validate_on(mesh.left(), mesh.right());
    const int n = mesh.num_elements();
    Eigen::MatrixXd h(2 * n, 2 * n);
    const auto kind_of = [](int i) {
        return i == 0 ? ShapeKind::value : ShapeKind::slope;
    };
    if (w.is_unit()) {
        if (force_direct) {
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            h(2 * p + a, 2 * q + b) = detail::hilbert_entry_direct(
                                mesh, p, kind_of(a), q, kind_of(b), inner_rule,
                                outer_rule);
        } else {
            const auto plain =
                detail::compute_hilbert_generators(mesh, inner_rule, outer_rule);
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    const int k = ((p - q) % n + n) % n;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            h(2 * p + a, 2 * q + b) = plain[k][2 * a + b];
                }
        }
        return h;
    }
    if (w.kind() == WeightFunction::Kind::linear && !force_direct) {
        const auto gen =
            detail::compute_line_hilbert_generators(mesh, inner_rule, outer_rule);
        for (int p = 0; p < n; ++p) {
            const double phi_p = w.intercept() + w.slope() * mesh.node(p);
            for (int q = 0; q < n; ++q) {
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const int idx = 2 * a + b;
                        double val;
                        if (p == 0 || q == 0) {
                            val = detail::line_hilbert_entry(mesh, w, p, kind_of(a),
                                                             q, kind_of(b),
                                                             inner_rule, outer_rule);
                        } else {
                            const int k = p - q + gen.offset0;
                            val = phi_p * gen.plain[k][idx] +
                                  w.slope() * (gen.moment[k][idx] + gen.value[k][idx]);
                        }
                        h(2 * p + a, 2 * q + b) = val;
                    }
            }
        }
    } else {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        h(2 * p + a, 2 * q + b) = detail::line_hilbert_entry(
                            mesh, w, p, kind_of(a), q, kind_of(b), inner_rule,
                            outer_rule);
    }
    return h;
}

/// Convective form: entry i = ∫ field(x)² · (φ v_i)'(x) dx.
inline Eigen::VectorXd nonlinear_form(
    const HermiteField& u, const WeightFunction& w,
    const QuadratureRule& outer_rule = gauss_legendre(8)) {
    const UniformPeriodicMesh& mesh = *u.mesh;
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
    for (int e = 0; e < n; ++e) {
        const double xa = mesh.node(e);
        const auto dofs = element_dofs(mesh, e);
        const auto bounds = detail::panel_bounds(
            xa, xa + dx, detail::weight_breaks_in(w, xa, xa + dx));
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
            const double hw = 0.5 * (bounds[k + 1] - bounds[k]);
            for (std::size_t i = 0; i < outer_rule.nodes.size(); ++i) {
                const double x = mid + hw * outer_rule.nodes[i];
                const double wq = hw * outer_rule.weights[i];
                const auto [phi, dphi] = w.eval(x);
                const auto s0 = local_shapes((x - xa) / dx);
                const auto s1 = local_shapes((x - xa) / dx, 1);
                double uval = 0.0;
                for (int r = 0; r < 4; ++r) uval += u.coeffs[dofs[r]] * s0[r];
                const double f = wq * uval * uval;
                for (int r = 0; r < 4; ++r)
                    out[dofs[r]] += f * (dphi * s0[r] + phi * s1[r] / dx);
            }
        }
    }
    return out;
}

/// Exact weighted inner product ⟨a, φ b⟩ (the quadratic form of the mass
/// matrix, accumulated elementwise without materializing it).
inline double l2_inner(const UniformPeriodicMesh& mesh, const HermiteField& a,
                       const HermiteField& b, const WeightFunction& w,
                       const QuadratureRule& outer_rule = gauss_legendre(8)) {
    if (!(*a.mesh == mesh) || !(*b.mesh == mesh))
        throw std::invalid_argument("l2_inner: fields live on different meshes");
    const int n = mesh.num_elements();
    const double dx = mesh.dx();
    double acc = 0.0;
    for (int e = 0; e < n; ++e) {
        const double xa = mesh.node(e);
        const auto dofs = element_dofs(mesh, e);
        const auto bounds = detail::panel_bounds(
            xa, xa + dx, detail::weight_breaks_in(w, xa, xa + dx));
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
            const double hw = 0.5 * (bounds[k + 1] - bounds[k]);
            for (std::size_t i = 0; i < outer_rule.nodes.size(); ++i) {
                const double x = mid + hw * outer_rule.nodes[i];
                const auto s0 = local_shapes((x - xa) / dx);
                double av = 0.0, bv = 0.0;
                for (int r = 0; r < 4; ++r) {
                    av += a.coeffs[dofs[r]] * s0[r];
                    bv += b.coeffs[dofs[r]] * s0[r];
                }
                acc += hw * outer_rule.weights[i] * w.eval(x).first * av * bv;
            }
        }
    }
    return acc;
}

/// Unweighted L² norm of a field.
inline double l2_norm(const HermiteField& a) {
    return std::sqrt(std::max(0.0, l2_inner(*a.mesh, a, a, WeightFunction::unit())));
}

/// Everything the time stepper needs, assembled once per (mesh, weight, dt).
struct AssembledOperators {
    const UniformPeriodicMesh* mesh = nullptr;
    WeightFunction weight = WeightFunction::unit();
    double dt = 0.0;
    int inner_order = 7;
    int outer_order = 8;
    Eigen::MatrixXd mass_w;
    Eigen::MatrixXd hilbert_stiff;
    Eigen::PartialPivLU<Eigen::MatrixXd> implicit_lu;

    static AssembledOperators assemble(const UniformPeriodicMesh& mesh,
                                       const WeightFunction& w, double dt,
                                       int inner_order = 7, int outer_order = 8) {
        if (!(dt > 0.0))
            throw std::invalid_argument("operators: dt must be positive");
        AssembledOperators ops;
        ops.mesh = &mesh;
        ops.weight = w;
        ops.dt = dt;
        ops.inner_order = inner_order;
        ops.outer_order = outer_order;
        ops.mass_w = assemble_weighted_mass(mesh, w, gauss_legendre(outer_order));
        ops.hilbert_stiff = assemble_hilbert_stiffness(
            mesh, w, gauss_legendre(inner_order), gauss_legendre(outer_order));
        ops.implicit_lu.compute(ops.mass_w + 0.5 * dt * ops.hilbert_stiff);
        return ops;
    }
};

}  // namespace bogal
