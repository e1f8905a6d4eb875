#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "repulse/errors.hpp"

namespace repulse {

// Composite trapezoid rule on possibly non-uniform nodes.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw argument_error("trapezoid: size mismatch");
    if (x.size() < 2) throw argument_error("trapezoid: need at least 2 samples");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LinearFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw argument_error("least_squares_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    if (vx == 0.0) throw argument_error("least_squares_line: degenerate abscissae");
    LinearFit f;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r_squared = (vy > 0.0) ? (cxy * cxy) / (vx * vy) : 1.0;
    return f;
}

inline int next_power_of_two(double x) {
    int n = 1;
    while (n < x) n *= 2;
    return n;
}

}  // namespace repulse
