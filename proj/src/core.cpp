#include <algorithm>
#include <cmath>

#include "repulse/norms.hpp"
#include "repulse/potential.hpp"
#include "repulse/wavefunction.hpp"

namespace repulse {

WaveFunction make_gaussian(const Grid& grid, const std::vector<double>& center, double width,
                           const std::vector<double>& momentum) {
    const int n = grid.dimension();
    if (static_cast<int>(center.size()) != n)
        throw argument_error("make_gaussian: center must have length " + std::to_string(n));
    if (static_cast<int>(momentum.size()) != n)
        throw argument_error("make_gaussian: momentum must have length " + std::to_string(n));
    if (!(width > 0.0)) throw argument_error("make_gaussian: width must be positive");

    WaveFunction u(grid);
    const auto x = grid.axis_nodes();
    const int N = grid.points_per_axis();
    if (n == 1) {
        for (int j = 0; j < N; ++j) {
            const double d = x[j] - center[0];
            u.values[j] = std::polar(std::exp(-0.5 * width * d * d), momentum[0] * x[j]);
        }
    } else {
        for (int i = 0; i < N; ++i) {
            const double d0 = x[i] - center[0];
            for (int j = 0; j < N; ++j) {
                const double d1 = x[j] - center[1];
                const double amp = std::exp(-0.5 * width * (d0 * d0 + d1 * d1));
                const double phase = momentum[0] * x[i] + momentum[1] * x[j];
                u.values[static_cast<std::size_t>(i) * N + j] = std::polar(amp, phase);
            }
        }
    }
    return u;
}

std::vector<double> eval_potential(const PotentialSpec& spec, const Grid& grid) {
    const std::size_t total = grid.total_points();
    std::vector<double> v(total, 0.0);
    switch (spec.kind) {
        case PotentialSpec::Kind::zero:
            return v;
        case PotentialSpec::Kind::tabulated:
            if (spec.table.size() != total)
                throw argument_error("eval_potential: table size does not match grid");
            return spec.table;
        case PotentialSpec::Kind::power_decay: {
            const auto x = grid.axis_nodes();
            const int N = grid.points_per_axis();
            if (grid.dimension() == 1) {
                for (int j = 0; j < N; ++j)
                    v[j] = spec.amplitude * std::pow(1.0 + x[j] * x[j], -0.5 * spec.decay);
            } else {
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        v[static_cast<std::size_t>(i) * N + j] =
                            spec.amplitude * std::pow(1.0 + x[i] * x[i] + x[j] * x[j], -0.5 * spec.decay);
            }
            return v;
        }
    }
    return v;
}

double lr_norm(const WaveFunction& u, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (const auto& z : u.values) m = std::max(m, std::abs(z));
        return m;
    }
    if (!(r >= 1.0)) throw argument_error("lr_norm: exponent must satisfy r >= 1");
    const double cell = std::pow(u.grid.spacing(), u.grid.dimension());
    if (r == 2.0) {
        double s = 0.0;
        for (const auto& z : u.values) s += std::norm(z);
        return std::sqrt(cell * s);
    }
    double s = 0.0;
    for (const auto& z : u.values) s += std::pow(std::abs(z), r);
    return std::pow(cell * s, 1.0 / r);
}

StrichartzResult strichartz_norm(const std::vector<double>& times, const std::vector<double>& space_norms,
                                 double q) {
    if (times.size() != space_norms.size())
        throw argument_error("strichartz_norm: times/norms size mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw argument_error("strichartz_norm: times must be strictly increasing");

    StrichartzResult res;
    if (std::isinf(q)) {
        if (times.empty()) throw argument_error("strichartz_norm: empty series");
        const double t_half = times.front() + 0.5 * (times.back() - times.front());
        double sup_half = 0.0, sup_full = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            sup_full = std::max(sup_full, space_norms[i]);
            if (times[i] <= t_half) sup_half = std::max(sup_half, space_norms[i]);
        }
        res.value = sup_full;
        res.last_doubling_increment = (sup_half > 0.0) ? sup_full / sup_half - 1.0 : 0.0;
        return res;
    }
    if (!(q >= 1.0)) throw argument_error("strichartz_norm: exponent must satisfy q >= 1");
    if (times.size() < 2) throw argument_error("strichartz_norm: need at least 2 samples for finite q");

    const double t_half = times.front() + 0.5 * (times.back() - times.front());
    double integral = 0.0, integral_half = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double piece = 0.5 * (times[i] - times[i - 1]) *
                             (std::pow(space_norms[i], q) + std::pow(space_norms[i - 1], q));
        integral += piece;
        // Attribute a straddling interval to the half-window by linear proportion.
        if (times[i] <= t_half) {
            integral_half += piece;
        } else if (times[i - 1] < t_half) {
            integral_half += piece * (t_half - times[i - 1]) / (times[i] - times[i - 1]);
        }
    }
    res.value = std::pow(integral, 1.0 / q);
    const double value_half = std::pow(integral_half, 1.0 / q);
    res.last_doubling_increment = (value_half > 0.0) ? res.value / value_half - 1.0 : 0.0;
    return res;
}

StrichartzResult strichartz_norm(const TimeSeries& series, double q, double r) {
    std::vector<double> norms(series.states.size());
    for (std::size_t i = 0; i < series.states.size(); ++i) norms[i] = lr_norm(series.states[i], r);
    return strichartz_norm(series.times, norms, q);
}

}  // namespace repulse
