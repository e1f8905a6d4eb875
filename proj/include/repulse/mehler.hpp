#pragma once

#include "repulse/norms.hpp"
#include "repulse/potential.hpp"
#include "repulse/wavefunction.hpp"

namespace repulse {

// Exact free flow e^{-i sigma H0}, H0 = -Laplace - tau^2 x^2, through the
// closed-form hyperbolic kernel
//   (tau/(2 pi i sinh 2 tau sigma))^{n/2}
//     * exp(i tau ((x^2+y^2) cosh(2 tau sigma) - 2 x.y) / (2 sinh(2 tau sigma))).
struct PropagatorParams {
    double tau;
    double sigma;

    PropagatorParams(double tau_, double sigma_) : tau(tau_), sigma(sigma_) {
        if (tau == 0.0) throw argument_error("PropagatorParams: tau must be nonzero");
    }
};

// Largest instantaneous spatial frequency the kernel sweeps across the grid,
// |tau| (L cosh(2 tau sigma) + L) / |sinh(2 tau sigma)|, per axis.
double chirp_frequency_bound(const Grid& grid, const PropagatorParams& p);

// Smallest power-of-two N that satisfies the chirp sampling condition at fixed L.
int minimal_admissible_points(const Grid& grid, const PropagatorParams& p);

// Same-grid evaluation of e^{-i sigma H0} u via chirp multiply -> scaled Fourier
// transform (Bluestein convolution) -> chirp multiply.  Throws precondition_error
// carrying the minimal admissible N when the chirp sampling condition fails.
WaveFunction propagate_exact(const WaveFunction& u, const PropagatorParams& params);

struct DecayFit {
    double t_min = 0.0;
    double t_max = 0.0;
    double fitted_rate = 0.0;     // decay rate of log ||u(t)||_inf against t (positive = decay)
    double reference_rate = 0.0;  // n * tau, the rate the kernel prefactor dictates
    double r_squared = 0.0;
};

struct DecayFitResult {
    DecayFit fit;
    NormSeries series;  // t -> ||u(t)||_inf
    double intercept = 0.0;
};

// Fit the exponential decay rate of ||e^{-itH0} f||_inf over the given times.
DecayFitResult decay_fit(const WaveFunction& f, const HamiltonianSpec& params_base,
                         const std::vector<double>& times);

struct WeightedDecayResult {
    NormSeries series;  // sigma -> ||<x>^{-rho} e^{-i sigma H0} <x>^{-rho} phi||_2
    double integral = 0.0;
    double saturation_increment = 0.0;  // relative increase from half window to full window
    double fitted_slope = 0.0;          // slope of log value against log |sinh(2 tau sigma)|
    double fitted_intercept = 0.0;
    double fit_r_squared = 0.0;
    double reference_slope = 0.0;       // -n/Q
    double envelope_constant = 0.0;     // best-fit C in C |sinh(2 tau sigma)|^{-n/Q}
    double max_envelope_ratio = 0.0;    // max over sigma of value / envelope
};

// Weighted decay diagnostic: requires rho*Q > n and Q > n.
WeightedDecayResult weighted_decay_integrand(double rho, double Q, const HamiltonianSpec& params_base,
                                             const WaveFunction& phi, const std::vector<double>& sigmas);

}  // namespace repulse
