#pragma once

#include <complex>
#include <vector>

#include "repulse/potential.hpp"
#include "repulse/solver.hpp"
#include "repulse/wavefunction.hpp"

namespace repulse {

// Second-order central-difference discretization of H = -d^2/dx^2 - tau^2 x^2 + V
// on [-L, L) with Dirichlet ends: symmetric tridiagonal, diagonal
// 2/dx^2 - tau^2 x_j^2 + V(x_j), off-diagonal -1/dx^2.
struct DiscreteHamiltonian {
    Grid grid;
    double tau = 0.0;
    std::vector<double> diag;
    double off = 0.0;
    std::vector<double> potential_values;

    // Low-level constructor; tau may be any real here (the Laplacian oracle uses tau = 0).
    static DiscreteHamiltonian build(const Grid& grid, double tau, const std::vector<double>& potential);

    int size() const { return grid.points_per_axis(); }
};

// Spec-level assembly; requires n = 1 and N <= 2^14.
DiscreteHamiltonian assemble(const Grid& grid, const HamiltonianSpec& spec);

// Number of eigenvalues of h strictly below t (Sturm count on the shifted LDL^T).
int eigenvalue_count_below(const DiscreteHamiltonian& h, double t);

// Smallest eigenvalue by bisection on the Sturm count.
double lowest_eigenvalue(const DiscreteHamiltonian& h, double tol = 1e-10);

// Mean local level spacing of h in a window around lambda (window auto-widened
// until it holds at least two levels or exhausts the spectrum).
double local_level_spacing(const DiscreteHamiltonian& h, double lambda, double initial_half_width);

enum class WeightKind { x_weight, potential_weight };

struct ResolventQuery {
    double lambda = 0.0;
    double nu = 1.0;
    double nu0 = 1.0;       // configured ceiling for nu
    int sign = +1;          // resolvent (h - lambda -+ i nu)^{-1}: sign=+1 takes +i nu
    double weight_exponent = 0.0;
    WeightKind weight_kind = WeightKind::x_weight;
    double min_certificate = 0.0;  // resolution floor; 0 disables enforcement

    void validate() const {
        if (!(nu > 0.0) || nu > nu0)
            throw argument_error("ResolventQuery: need 0 < nu <= nu0");
        if (sign != 1 && sign != -1) throw argument_error("ResolventQuery: sign must be +-1");
        if (weight_exponent < 0.0) throw argument_error("ResolventQuery: weight exponent must be >= 0");
    }
};

struct ResolventEstimate {
    double norm = 0.0;
    double certificate = 0.0;  // nu / local level spacing
    int iterations = 0;
};

// Operator norm of W (h - lambda -+ i nu)^{-1} W, W the diagonal weight, by power
// iteration on the normal operator through complex tridiagonal solves.
ResolventEstimate weighted_resolvent_norm(const DiscreteHamiltonian& h, const ResolventQuery& query,
                                          unsigned long long seed = 0);

struct ScanRow {
    double lambda = 0.0;
    double nu = 0.0;
    double theta = 0.0;
    int sign = +1;
    double norm = 0.0;
    double certificate = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
};

struct HighEnergyScan {
    ScanResult scan;
    std::vector<double> thetas;
    std::vector<double> slopes;  // log-log regression slope of norm against lambda, per theta
};

// <x>^{-theta}-weighted free-resolvent norms (V stripped from h) over a lambda sweep.
HighEnergyScan high_energy_scan(const DiscreteHamiltonian& h, const std::vector<double>& thetas,
                                const std::vector<double>& lambdas, double nu,
                                unsigned long long seed = 0);

struct BirmanSchwingerResult {
    double discrepancy = 0.0;         // relative operator-norm gap between the identity's two sides
    double condition_estimate = 0.0;  // of 1 + |V|^{1/2} sign(V) (H0 - z)^{-1} |V|^{1/2}
};

// Checks the Birman-Schwinger resolvent identity on dense discrete operators.
BirmanSchwingerResult birman_schwinger_check(const Grid& grid, const HamiltonianSpec& spec,
                                             const ResolventQuery& query);

struct SmoothingResult {
    double value = 0.0;                 // int_{-T}^{T} || |V|^{1/2} u(t) ||_2^2 dt
    double saturation_increment = 0.0;  // relative increase from the half window to the full window
    double norm_f_sq = 0.0;
    double T = 0.0;
};

// Kato smoothing integral along the split-step trajectory over [-T, T].
SmoothingResult smoothing_integral(const WaveFunction& f, const HamiltonianSpec& spec,
                                   const EvolutionPlan& plan);

}  // namespace repulse
