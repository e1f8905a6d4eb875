#pragma once

#include "repulse/norms.hpp"
#include "repulse/potential.hpp"
#include "repulse/wavefunction.hpp"

namespace repulse {

// Discretization of e^{-itH}, H = -Laplace - tau^2 x^2 + V.  dt may be negative
// (backward evolution, needed for time-symmetric integrals and reversibility);
// record_every must divide steps so the last step is always recorded.
struct EvolutionPlan {
    HamiltonianSpec hamiltonian;
    double dt;
    int steps;
    int record_every;

    EvolutionPlan(HamiltonianSpec h, double dt_, int steps_, int record_every_ = 1)
        : hamiltonian(std::move(h)), dt(dt_), steps(steps_), record_every(record_every_) {
        if (dt == 0.0) throw argument_error("EvolutionPlan: dt must be nonzero");
        if (steps < 1) throw argument_error("EvolutionPlan: steps must be >= 1");
        if (record_every < 1) throw argument_error("EvolutionPlan: record_every must be >= 1");
        if (steps % record_every != 0)
            throw argument_error("EvolutionPlan: record_every must divide steps");
    }
};

// Largest |dt| the phase-resolution guard dt * max|{-tau^2 x^2 + V}| <= pi/4 allows.
double max_admissible_dt(const Grid& grid, const HamiltonianSpec& h);

// One Strang step: e^{-i dt/2 W} F^{-1} e^{-i dt xi^2} F e^{-i dt/2 W}, W = -tau^2 x^2 + V.
WaveFunction strang_step(const WaveFunction& u, const EvolutionPlan& plan);

struct EvolveResult {
    TimeSeries series;
    std::vector<double> boundary_mass;   // per recorded sample: |u|^2 fraction in the outer 10% shell
    bool potential_class_verified = true;
};

// Full trajectory with the hard boundary-mass guard (breach -> domain-too-small error).
EvolveResult evolve(const WaveFunction& f, const EvolutionPlan& plan);

// Relative l2 residual of e^{-itH}f against the Duhamel right-hand side
//   e^{-itH0} f - i int_0^t e^{-i(t-s)H0} V e^{-isH} f ds
// with trapezoid quadrature on quad_points intervals at t = steps*dt.
double duhamel_residual(const WaveFunction& f, const EvolutionPlan& plan, int quad_points);

}  // namespace repulse
