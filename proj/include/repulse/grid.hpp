#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "repulse/errors.hpp"

namespace repulse {

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

// Uniform periodic grid on [-L, L)^n with the matched DFT frequency lattice.
// Node j along an axis sits at x_j = -L + j*dx, dx = 2L/N, and the frequency
// lattice is xi_k = (pi/L)*k for k in [-N/2, N/2), so |xi| < pi/dx (Nyquist).
class Grid {
public:
    Grid(int dimension, double half_width, int points_per_axis)
        : dim_(dimension), half_width_(half_width), n_axis_(points_per_axis) {
        if (dim_ != 1 && dim_ != 2)
            throw argument_error("Grid: dimension must be 1 or 2, got " + std::to_string(dim_));
        if (!(half_width_ > 0.0))
            throw argument_error("Grid: half_width must be positive");
        if (n_axis_ < 8 || !is_power_of_two(n_axis_))
            throw argument_error("Grid: points_per_axis must be a power of two >= 8, got " +
                                 std::to_string(n_axis_));
    }

    int dimension() const { return dim_; }
    double half_width() const { return half_width_; }
    int points_per_axis() const { return n_axis_; }
    double spacing() const { return 2.0 * half_width_ / n_axis_; }
    std::size_t total_points() const {
        std::size_t t = 1;
        for (int d = 0; d < dim_; ++d) t *= static_cast<std::size_t>(n_axis_);
        return t;
    }

    double node(int j) const { return -half_width_ + j * spacing(); }

    std::vector<double> axis_nodes() const {
        std::vector<double> x(n_axis_);
        for (int j = 0; j < n_axis_; ++j) x[j] = node(j);
        return x;
    }

    // DFT frequencies in FFT storage order: k < N/2 positive, k >= N/2 wrapped negative.
    std::vector<double> axis_frequencies() const {
        std::vector<double> xi(n_axis_);
        const double dxi = M_PI / half_width_;
        for (int k = 0; k < n_axis_; ++k) {
            const int kk = (k < n_axis_ / 2) ? k : k - n_axis_;
            xi[k] = dxi * kk;
        }
        return xi;
    }

    double nyquist() const { return M_PI / spacing(); }

    bool operator==(const Grid& o) const {
        return dim_ == o.dim_ && half_width_ == o.half_width_ && n_axis_ == o.n_axis_;
    }

private:
    int dim_;
    double half_width_;
    int n_axis_;
};

}  // namespace repulse
