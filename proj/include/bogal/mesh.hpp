#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bogal {

/// Uniform mesh of N elements on [left, right) with node N identified with
/// node 0. Coordinates passed to wrap()/element_of() may lie anywhere on the
/// line; they are reduced into the fundamental period first.
class UniformPeriodicMesh {
public:
    UniformPeriodicMesh(double left, double right, int num_elements)
        : left_(left), right_(right), n_(num_elements) {
        if (!(right > left))
            throw std::invalid_argument("mesh: right endpoint must exceed left");
        if (n_ < 4)
            throw std::invalid_argument("mesh: at least 4 elements required");
        dx_ = (right - left) / n_;
    }

    double left() const { return left_; }
    double right() const { return right_; }
    int num_elements() const { return n_; }
    double dx() const { return dx_; }
    double period() const { return right_ - left_; }

    /// Node coordinate; j may lie outside [0, N) (line coordinates, no wrap).
    double node(int j) const { return left_ + dx_ * j; }

    /// Reduce x into [left, right).
    double wrap(double x) const {
        const double p = period();
        double y = std::fmod(x - left_, p);
        if (y < 0.0) y += p;
        if (y >= p) y = 0.0;  // fmod may round up to the period
        return left_ + y;
    }

    /// Index of the element containing wrap(x), in [0, N).
    int element_of(double x) const {
        const int e = static_cast<int>((wrap(x) - left_) / dx_);
        return e >= n_ ? n_ - 1 : (e < 0 ? 0 : e);
    }

    std::vector<double> node_coordinates() const {
        std::vector<double> xs(n_);
        for (int j = 0; j < n_; ++j) xs[j] = node(j);
        return xs;
    }

    bool operator==(const UniformPeriodicMesh& o) const {
        return left_ == o.left_ && right_ == o.right_ && n_ == o.n_;
    }

private:
    double left_;
    double right_;
    int n_;
    double dx_;
};

}  // namespace bogal
