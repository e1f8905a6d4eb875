#include "repulse/mehler.hpp"

#include <cmath>

#include "repulse/fft.hpp"
#include "repulse/numerics.hpp"

namespace repulse {

namespace {

struct KernelCoefficients {
    double alpha;  // quadratic chirp rate: tau cosh(2 tau sigma) / (2 sinh(2 tau sigma))
    double beta;   // transform scale:      tau / sinh(2 tau sigma)
    cdouble axis_prefactor;
};

KernelCoefficients kernel_coefficients(const PropagatorParams& p) {
    const double s = std::sinh(2.0 * p.tau * p.sigma);
    const double c = std::cosh(2.0 * p.tau * p.sigma);
    KernelCoefficients k;
    k.alpha = p.tau * c / (2.0 * s);
    k.beta = p.tau / s;
    // Principal branch fixed by the sigma -> 0+ free-propagator limit:
    // (tau/(2 pi i s))^{1/2} = sqrt(|tau/(2 pi s)|) e^{-i pi/4 sign(sigma)} per axis
    // (tau/s > 0 iff sigma > 0, and the kernel is invariant under tau -> -tau).
    const double sgn = (p.sigma > 0.0) ? 1.0 : -1.0;
    k.axis_prefactor = std::polar(std::sqrt(std::abs(p.tau / (2.0 * M_PI * s))), -0.25 * M_PI * sgn);
    return k;
}

// In place: data <- S, S_j = sum_k exp(-i beta x_j y_k) data_k with x = y = -L + j dx,
// via the Bluestein identity jk = (j^2 + k^2 - (j-k)^2)/2 and one padded convolution.
void scaled_fourier_axis(cdouble* data, int N, double L, double dx, double beta, const Fft& fft_pad) {
    const int M = fft_pad.size();  // 2N
    const double c2 = 0.5 * beta * dx * dx;
    const double lin = beta * L * dx;

    std::vector<cdouble> a(M, cdouble{0.0, 0.0});
    std::vector<cdouble> b(M, cdouble{0.0, 0.0});
    for (int k = 0; k < N; ++k) {
        const double kk = static_cast<double>(k);
        a[k] = data[k] * std::polar(1.0, lin * kk - c2 * kk * kk);
    }
    for (int m = 0; m < N; ++m) {
        const double mm = static_cast<double>(m);
        b[m] = std::polar(1.0, c2 * mm * mm);
        if (m > 0) b[M - m] = b[m];
    }
    fft_pad.forward(a);
    fft_pad.forward(b);
    for (int i = 0; i < M; ++i) a[i] *= b[i];
    fft_pad.inverse(a);

    const double phase0 = -beta * L * L;
    for (int j = 0; j < N; ++j) {
        const double jj = static_cast<double>(j);
        data[j] = a[j] * std::polar(1.0, phase0 + lin * jj - c2 * jj * jj);
    }
}

// Apply the full 1-d kernel along one axis of an n-d array.
void propagate_axis(std::vector<cdouble>& values, const Grid& grid, int axis,
                    const KernelCoefficients& k, const Fft& fft_pad) {
    const int N = grid.points_per_axis();
    const double L = grid.half_width();
    const double dx = grid.spacing();
    const auto x = grid.axis_nodes();

    std::vector<cdouble> pre(N), post(N);
    for (int j = 0; j < N; ++j) {
        pre[j] = std::polar(1.0, k.alpha * x[j] * x[j]);
        post[j] = k.axis_prefactor * dx * pre[j];
    }

    std::vector<cdouble> line(N);
    const int n_lines = static_cast<int>(values.size()) / N;
    const std::size_t stride = (grid.dimension() == 1 || axis == 1) ? 1 : static_cast<std::size_t>(N);

    for (int l = 0; l < n_lines; ++l) {
        std::size_t base;
        if (stride == 1)
            base = static_cast<std::size_t>(l) * N;  // contiguous row
        else
            base = static_cast<std::size_t>(l);      // column of a row-major square array
        for (int j = 0; j < N; ++j) line[j] = values[base + j * stride] * pre[j];
        scaled_fourier_axis(line.data(), N, L, dx, k.beta, fft_pad);
        for (int j = 0; j < N; ++j) values[base + j * stride] = line[j] * post[j];
    }
}

}  // namespace

double chirp_frequency_bound(const Grid& grid, const PropagatorParams& p) {
    const double s = std::sinh(2.0 * p.tau * p.sigma);
    const double c = std::cosh(2.0 * p.tau * p.sigma);
    const double L = grid.half_width();
    return std::abs(p.tau) * (L * c + L) / std::abs(s);
}

int minimal_admissible_points(const Grid& grid, const PropagatorParams& p) {
    const double f = chirp_frequency_bound(grid, p);
    // Need pi/dx = pi N / (2L) >= f.
    const double n_needed = 2.0 * grid.half_width() * f / M_PI;
    return std::max(8, next_power_of_two(n_needed));
}

WaveFunction propagate_exact(const WaveFunction& u, const PropagatorParams& params) {
    if (params.sigma == 0.0) return u;
    if (!u.all_finite()) throw argument_error("propagate_exact: input state has non-finite entries");

    const Grid& grid = u.grid;
    const double f_req = chirp_frequency_bound(grid, params);
    if (f_req > grid.nyquist()) {
        const int n_min = minimal_admissible_points(grid, params);
        throw precondition_error(
            "propagate_exact: chirp sampling condition violated (required frequency " +
                std::to_string(f_req) + " > Nyquist " + std::to_string(grid.nyquist()) +
                "); refine to at least N = " + std::to_string(n_min) + " points per axis",
            static_cast<double>(n_min));
    }

    const KernelCoefficients k = kernel_coefficients(params);
    WaveFunction out = u;
    Fft fft_pad(2 * grid.points_per_axis());
    for (int axis = 0; axis < grid.dimension(); ++axis) propagate_axis(out.values, grid, axis, k, fft_pad);
    return out;
}

DecayFitResult decay_fit(const WaveFunction& f, const HamiltonianSpec& params_base,
                         const std::vector<double>& times) {
    if (params_base.potential.kind != PotentialSpec::Kind::zero)
        throw argument_error("decay_fit: requires the free Hamiltonian (zero potential)");
    if (times.size() < 2) throw argument_error("decay_fit: need at least 2 times");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw argument_error("decay_fit: times must be strictly increasing");
    const double tau = params_base.tau;
    if (!(std::sinh(2.0 * tau * times.front()) >= 1.0))
        throw argument_error("decay_fit: t_min too small, need sinh(2 tau t_min) >= 1");

    DecayFitResult res;
    res.series.r_exponent = inf;
    std::vector<double> logs;
    logs.reserve(times.size());
    for (double t : times) {
        const WaveFunction u = propagate_exact(f, PropagatorParams(tau, t));
        const double m = lr_norm(u, inf);
        res.series.times.push_back(t);
        res.series.norms.push_back(m);
        logs.push_back(std::log(m));
    }
    const LinearFit fit = least_squares_line(times, logs);
    res.fit.t_min = times.front();
    res.fit.t_max = times.back();
    res.fit.fitted_rate = -fit.slope;
    res.fit.reference_rate = f.grid.dimension() * std::abs(tau);
    res.fit.r_squared = fit.r_squared;
    res.intercept = fit.intercept;
    return res;
}

WeightedDecayResult weighted_decay_integrand(double rho, double Q, const HamiltonianSpec& params_base,
                                             const WaveFunction& phi, const std::vector<double>& sigmas) {
    const int n = phi.grid.dimension();
    if (!(rho > 0.0)) throw argument_error("weighted_decay_integrand: rho must be positive");
    if (!(rho * Q > n))
        throw argument_error("weighted_decay_integrand: hypothesis rho*Q > n violated (rho*Q = " +
                             std::to_string(rho * Q) + " <= n = " + std::to_string(n) + ")");
    if (!(Q > n))
        throw argument_error("weighted_decay_integrand: hypothesis Q > n violated (Q = " +
                             std::to_string(Q) + " <= n = " + std::to_string(n) + ")");
    if (sigmas.size() < 2) throw argument_error("weighted_decay_integrand: need at least 2 sigmas");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > 0.0)) throw argument_error("weighted_decay_integrand: sigmas must be positive");
        if (i > 0 && !(sigmas[i] > sigmas[i - 1]))
            throw argument_error("weighted_decay_integrand: sigmas must be strictly increasing");
    }
    if (params_base.potential.kind != PotentialSpec::Kind::zero)
        throw argument_error("weighted_decay_integrand: requires the free Hamiltonian");

    const Grid& grid = phi.grid;
    const int N = grid.points_per_axis();
    const auto x = grid.axis_nodes();
    std::vector<double> weight(grid.total_points());
    if (n == 1) {
        for (int j = 0; j < N; ++j) weight[j] = std::pow(1.0 + x[j] * x[j], -0.5 * rho);
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                weight[static_cast<std::size_t>(i) * N + j] =
                    std::pow(1.0 + x[i] * x[i] + x[j] * x[j], -0.5 * rho);
    }

    WaveFunction seeded = phi;
    for (std::size_t i = 0; i < seeded.values.size(); ++i) seeded.values[i] *= weight[i];

    WeightedDecayResult res;
    res.series.r_exponent = 2.0;
    std::vector<double> log_sinh, log_val;
    for (double s : sigmas) {
        WaveFunction u = propagate_exact(seeded, PropagatorParams(params_base.tau, s));
        for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] *= weight[i];
        const double v = lr_norm(u, 2.0);
        res.series.times.push_back(s);
        res.series.norms.push_back(v);
        log_sinh.push_back(std::log(std::abs(std::sinh(2.0 * params_base.tau * s))));
        log_val.push_back(std::log(v));
    }

    res.integral = trapezoid(res.series.times, res.series.norms);
    {
        // Saturation: integral over the first half of the window vs the whole window.
        const double s_half = sigmas.front() + 0.5 * (sigmas.back() - sigmas.front());
        double half = 0.0;
        for (std::size_t i = 1; i < sigmas.size(); ++i) {
            const double piece =
                0.5 * (sigmas[i] - sigmas[i - 1]) * (res.series.norms[i] + res.series.norms[i - 1]);
            if (sigmas[i] <= s_half)
                half += piece;
            else if (sigmas[i - 1] < s_half)
                half += piece * (s_half - sigmas[i - 1]) / (sigmas[i] - sigmas[i - 1]);
        }
        res.saturation_increment = (half > 0.0) ? res.integral / half - 1.0 : 0.0;
    }

    const LinearFit fit = least_squares_line(log_sinh, log_val);
    res.fitted_slope = fit.slope;
    res.fitted_intercept = fit.intercept;
    res.fit_r_squared = fit.r_squared;
    res.reference_slope = -static_cast<double>(n) / Q;

    // Best-fit constant for the envelope C |sinh(2 tau sigma)|^{-n/Q}, then the
    // worst ratio of the measured series to that envelope.
    double mean = 0.0;
    for (std::size_t i = 0; i < log_val.size(); ++i) mean += log_val[i] - res.reference_slope * log_sinh[i];
    mean /= static_cast<double>(log_val.size());
    res.envelope_constant = std::exp(mean);
    double worst = 0.0;
    for (std::size_t i = 0; i < log_val.size(); ++i) {
        const double env = res.envelope_constant * std::exp(res.reference_slope * log_sinh[i]);
        worst = std::max(worst, res.series.norms[i] / env);
    }
    res.max_envelope_ratio = worst;
    return res;
}

}  // namespace repulse
