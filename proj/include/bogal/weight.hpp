#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bogal {

/// The scheme's weight function. Three variants:
///   unit           φ ≡ 1
///   linear         φ(x) = intercept + slope·x (must stay positive on the domain)
///   smooth_cutoff  φ' is 1 on |x|<R, falls to 0 across [R, R+1] by a quintic
///                  smoothstep, and φ is its exact antiderivative with
///                  φ(0) = R + 3/2, which realizes 1 ≤ φ ≤ 2+2R and makes φ
///                  point-symmetric about (0, φ(0)).
class WeightFunction {
public:
    enum class Kind { unit, linear, smooth_cutoff };

    static WeightFunction unit() { return WeightFunction(Kind::unit, 1.0, 0.0, 0.0); }

    static WeightFunction linear(double intercept, double slope) {
        return WeightFunction(Kind::linear, intercept, slope, 0.0);
    }

    static WeightFunction smooth_cutoff(double R) {
        if (!(R > 0.0))
            throw std::invalid_argument("weight: cut-off radius must be positive");
        return WeightFunction(Kind::smooth_cutoff, 0.0, 0.0, R);
    }

    Kind kind() const { return kind_; }
    bool is_unit() const { return kind_ == Kind::unit; }
    double intercept() const { return a_; }
    double slope() const { return b_; }
    double cutoff_radius() const { return radius_; }

    /// (φ(x), φ'(x))
    std::pair<double, double> eval(double x) const {
        switch (kind_) {
            case Kind::unit:
                return {1.0, 0.0};
            case Kind::linear:
                return {a_ + b_ * x, b_};
            case Kind::smooth_cutoff:
            default: {
                const double r = std::abs(x);
                const double sign = x >= 0.0 ? 1.0 : -1.0;
                const double phi0 = radius_ + 1.5;
                if (r <= radius_) return {phi0 + x, 1.0};
                if (r >= radius_ + 1.0) return {phi0 + sign * (radius_ + 0.5), 0.0};
                const double s = r - radius_;  // in (0, 1)
                const double ramp = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
                const double ramp_int = s * s * s * s * (2.5 + s * (-3.0 + s));
                return {phi0 + sign * (r - ramp_int), 1.0 - ramp};
            }
        }
    }

    /// Abscissas where φ' changes polynomial piece; quadrature panels split here.
    std::vector<double> breakpoints() const {
        if (kind_ != Kind::smooth_cutoff) return {};
        return {-radius_ - 1.0, -radius_, radius_, radius_ + 1.0};
    }

    /// Reject weights that fail positivity on [lo, hi].
    void validate_on(double lo, double hi) const {
        if (kind_ == Kind::linear) {
            const double m = std::min(a_ + b_ * lo, a_ + b_ * hi);
            if (!(m > 0.0))
                throw std::invalid_argument("weight: linear weight must be positive on the domain");
        }
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::unit: return "unit";
            case Kind::linear:
                return "linear(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
            case Kind::smooth_cutoff:
            default: return "cutoff(R=" + std::to_string(radius_) + ")";
        }
    }

private:
    WeightFunction(Kind k, double a, double b, double R)
        : kind_(k), a_(a), b_(b), radius_(R) {}

    Kind kind_;
    double a_;
    double b_;
    double radius_;
};

/// (φ(x), φ'(x)) as a free function, mirroring the assembly call sites.
inline std::pair<double, double> weight_eval(const WeightFunction& w, double x) {
    return w.eval(x);
}

}  // namespace bogal
