#pragma once

#include <limits>
#include <vector>

#include "repulse/wavefunction.hpp"

namespace repulse {

constexpr double inf = std::numeric_limits<double>::infinity();

// Spatial L^r norm by the rectangle rule: (dx^n sum |u_j|^r)^{1/r}; r = inf is max_j |u_j|.
double lr_norm(const WaveFunction& u, double r);

// A time series of spatial norms, serializable as CSV `t,norm,r`.
struct NormSeries {
    std::vector<double> times;
    std::vector<double> norms;
    double r_exponent = 2.0;
};

// A recorded trajectory t -> u(t).
struct TimeSeries {
    std::vector<double> times;
    std::vector<WaveFunction> states;
};

struct StrichartzResult {
    double value = 0.0;
    // Relative increase of the value when the window grows from its first half
    // to the full window; small means the time integral has saturated.
    double last_doubling_increment = 0.0;
};

// Mixed norm ||u||_{L^q_t L^r_x} over the supplied window, trapezoid rule in t
// for finite q, sup over samples for q = inf.
StrichartzResult strichartz_norm(const TimeSeries& series, double q, double r);
StrichartzResult strichartz_norm(const std::vector<double>& times, const std::vector<double>& space_norms,
                                 double q);

}  // namespace repulse
