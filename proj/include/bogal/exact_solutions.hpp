#pragma once

#include <cmath>
#include <stdexcept>

namespace bogal {

/// Right-moving periodic traveling wave whose wavelength equals the full
/// domain width 2·half_period. The modulation parameter delta = π/(speed ·
/// half_period) is fixed at construction so the 0 < delta < 1 requirement
/// (real modulation depth, nonsingular denominator) fails fast.
class PeriodicWaveParams {
  public:
    explicit PeriodicWaveParams(double speed = 0.25, double half_period = 15.0,
                                double phase = 0.0)
        : speed_(speed), half_period_(half_period), phase_(phase) {
        if (!(speed > 0.0) || !(half_period > 0.0))
            throw std::invalid_argument(
                "periodic wave: speed and half_period must be positive");
        delta_ = M_PI / (speed * half_period);
        if (!(delta_ < 1.0))
            throw std::invalid_argument("periodic wave: need speed * half_period > pi");
    }

    double speed() const { return speed_; }
    double half_period() const { return half_period_; }
    double phase() const { return phase_; }
    double delta() const { return delta_; }

    double value(double x, double t) const {
        const double theta = speed_ * delta_ * (x - speed_ * t - phase_);
        return 2.0 * speed_ * delta_ * delta_ /
               (1.0 - modulation() * std::cos(theta));
    }

    double slope(double x, double t) const {
        const double theta = speed_ * delta_ * (x - speed_ * t - phase_);
        const double denom = 1.0 - modulation() * std::cos(theta);
        return -2.0 * speed_ * speed_ * std::pow(delta_, 3) * modulation() *
               std::sin(theta) / (denom * denom);
    }

    double crest() const {
        return 2.0 * speed_ * delta_ * delta_ / (1.0 - modulation());
    }
    double trough() const {
        return 2.0 * speed_ * delta_ * delta_ / (1.0 + modulation());
    }
    double mean() const { return 2.0 * speed_ * delta_; }

  private:
    double modulation() const { return std::sqrt(1.0 - delta_ * delta_); }

    double speed_, half_period_, phase_, delta_;
};

/// Two-soliton solution on the line: humps of heights near 4c1 and 4c2
/// started at d1 and d2, the faster overtaking the slower. Its algebraic
/// decay is what the weighted scheme on a truncated domain is built for.
class DoubleSolitonParams {
  public:
    explicit DoubleSolitonParams(double c1 = 0.3, double c2 = 0.6,
                                 double d1 = -30.0, double d2 = -55.0)
        : c1_(c1), c2_(c2), d1_(d1), d2_(d2) {
        if (!(c1 > 0.0) || !(c2 > 0.0))
            throw std::invalid_argument("double soliton: speeds must be positive");
        if (c1 == c2)
            throw std::invalid_argument("double soliton: speeds must be distinct");
    }

    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double d1() const { return d1_; }
    double d2() const { return d2_; }

    double value(double x, double t) const {
        const double l1 = x - c1_ * t - d1_;
        const double l2 = x - c2_ * t - d2_;
        const double e = c1_ * c2_ * l1 * l2 - pair_constant();
        const double o = c1_ * l1 + c2_ * l2;
        return numerator(l1, l2) / (e * e + o * o);
    }

    double slope(double x, double t) const {
        const double l1 = x - c1_ * t - d1_;
        const double l2 = x - c2_ * t - d2_;
        const double e = c1_ * c2_ * l1 * l2 - pair_constant();
        const double o = c1_ * l1 + c2_ * l2;
        const double den = e * e + o * o;
        const double num = numerator(l1, l2);
        const double dnum = 8.0 * c1_ * c2_ * (c1_ * l1 + c2_ * l2);
        const double dden =
            2.0 * e * c1_ * c2_ * (l1 + l2) + 2.0 * o * (c1_ + c2_);
        return (dnum * den - num * dden) / (den * den);
    }

  private:
    // (c1+c2)²/(c1−c2)², shared by numerator and denominator
    double pair_constant() const {
        const double r = (c1_ + c2_) / (c1_ - c2_);
        return r * r;
    }

    double numerator(double l1, double l2) const {
        const double sum = c1_ + c2_;
        return 4.0 * c1_ * c2_ *
               (c1_ * l1 * l1 + c2_ * l2 * l2 +
                sum * pair_constant() / (c1_ * c2_));
    }

    double c1_, c2_, d1_, d2_;
};

}  // namespace bogal
