#include "repulse/solver.hpp"

#include <cmath>

#include "repulse/fft.hpp"
#include "repulse/mehler.hpp"

namespace repulse {

namespace {

// Tables and FFT plan reused across the steps of one run.
struct StrangWorkspace {
    explicit StrangWorkspace(const Grid& grid, const HamiltonianSpec& h, double dt)
        : fft(grid.points_per_axis()) {
        const int N = grid.points_per_axis();
        const auto x = grid.axis_nodes();
        const auto v = eval_potential(h.potential, grid);
        const std::size_t total = grid.total_points();

        double w_max = 0.0;
        std::vector<double> w(total);
        if (grid.dimension() == 1) {
            for (int j = 0; j < N; ++j) w[j] = -h.tau * h.tau * x[j] * x[j] + v[j];
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    const std::size_t idx = static_cast<std::size_t>(i) * N + j;
                    w[idx] = -h.tau * h.tau * (x[i] * x[i] + x[j] * x[j]) + v[idx];
                }
        }
        for (double wv : w) w_max = std::max(w_max, std::abs(wv));
        max_abs_w = w_max;

        half_potential.resize(total);
        for (std::size_t i = 0; i < total; ++i) half_potential[i] = std::polar(1.0, -0.5 * dt * w[i]);

        const auto xi = grid.axis_frequencies();
        kinetic.resize(total);
        if (grid.dimension() == 1) {
            for (int k = 0; k < N; ++k) kinetic[k] = std::polar(1.0, -dt * xi[k] * xi[k]);
        } else {
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b)
                    kinetic[static_cast<std::size_t>(a) * N + b] =
                        std::polar(1.0, -dt * (xi[a] * xi[a] + xi[b] * xi[b]));
        }
    }

    void fft_all_axes(std::vector<cdouble>& vals, const Grid& grid, bool invert) const {
        const int N = grid.points_per_axis();
        if (grid.dimension() == 1) {
            invert ? fft.inverse(vals) : fft.forward(vals);
            return;
        }
        // rows
        for (int i = 0; i < N; ++i) {
            cdouble* row = vals.data() + static_cast<std::size_t>(i) * N;
            invert ? fft.inverse(row) : fft.forward(row);
        }
        // columns
        std::vector<cdouble> col(N);
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < N; ++i) col[i] = vals[static_cast<std::size_t>(i) * N + j];
            invert ? fft.inverse(col.data()) : fft.forward(col.data());
            for (int i = 0; i < N; ++i) vals[static_cast<std::size_t>(i) * N + j] = col[i];
        }
    }

    void step(WaveFunction& u) const {
        auto& vals = u.values;
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= half_potential[i];
        fft_all_axes(vals, u.grid, false);
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= kinetic[i];
        fft_all_axes(vals, u.grid, true);
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= half_potential[i];
    }

    Fft fft;
    std::vector<cdouble> half_potential;  // e^{-i dt/2 W(x)}
    std::vector<cdouble> kinetic;         // e^{-i dt |xi|^2}
    double max_abs_w = 0.0;
};

void check_phase_guard(double dt, double max_abs_w) {
    if (max_abs_w > 0.0 && std::abs(dt) * max_abs_w > 0.25 * M_PI) {
        const double dt_max = 0.25 * M_PI / max_abs_w;
        throw precondition_error("strang_step: phase-resolution guard dt*max|V - tau^2 x^2| <= pi/4 "
                                 "violated; maximal admissible |dt| = " + std::to_string(dt_max),
                                 dt_max);
    }
}

double shell_mass_fraction(const WaveFunction& u) {
    const Grid& g = u.grid;
    const int N = g.points_per_axis();
    const double edge = 0.9 * g.half_width();
    const auto x = g.axis_nodes();
    double total = 0.0, shell = 0.0;
    if (g.dimension() == 1) {
        for (int j = 0; j < N; ++j) {
            const double m = std::norm(u.values[j]);
            total += m;
            if (std::abs(x[j]) >= edge) shell += m;
        }
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const double m = std::norm(u.values[static_cast<std::size_t>(i) * N + j]);
                total += m;
                if (std::abs(x[i]) >= edge || std::abs(x[j]) >= edge) shell += m;
            }
    }
    return total > 0.0 ? shell / total : 0.0;
}

}  // namespace

double max_admissible_dt(const Grid& grid, const HamiltonianSpec& h) {
    const auto v = eval_potential(h.potential, grid);
    const auto x = grid.axis_nodes();
    const int N = grid.points_per_axis();
    double w_max = 0.0;
    if (grid.dimension() == 1) {
        for (int j = 0; j < N; ++j) w_max = std::max(w_max, std::abs(-h.tau * h.tau * x[j] * x[j] + v[j]));
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                w_max = std::max(w_max, std::abs(-h.tau * h.tau * (x[i] * x[i] + x[j] * x[j]) +
                                                 v[static_cast<std::size_t>(i) * N + j]));
    }
    return w_max > 0.0 ? 0.25 * M_PI / w_max : inf;
}

WaveFunction strang_step(const WaveFunction& u, const EvolutionPlan& plan) {
    StrangWorkspace ws(u.grid, plan.hamiltonian, plan.dt);
    check_phase_guard(plan.dt, ws.max_abs_w);
    WaveFunction out = u;
    ws.step(out);
    return out;
}

EvolveResult evolve(const WaveFunction& f, const EvolutionPlan& plan) {
    constexpr double boundary_tolerance = 1e-6;

    StrangWorkspace ws(f.grid, plan.hamiltonian, plan.dt);
    check_phase_guard(plan.dt, ws.max_abs_w);

    EvolveResult res;
    res.potential_class_verified = plan.hamiltonian.potential.verified_class();
    WaveFunction u = f;

    auto record = [&](int step_index) {
        res.series.times.push_back(step_index * plan.dt);
        res.series.states.push_back(u);
        res.boundary_mass.push_back(shell_mass_fraction(u));
    };
    record(0);

    for (int k = 1; k <= plan.steps; ++k) {
        ws.step(u);
        const double bm = shell_mass_fraction(u);
        if (bm > boundary_tolerance)
            throw precondition_error("evolve: boundary mass " + std::to_string(bm) +
                                         " exceeds 1e-6 at t = " + std::to_string(k * plan.dt) +
                                         "; the domain is too small for this run",
                                     bm);
        if (k % plan.record_every == 0) record(k);
    }
    return res;
}

double duhamel_residual(const WaveFunction& f, const EvolutionPlan& plan, int quad_points) {
    if (quad_points < 8) throw argument_error("duhamel_residual: quad_points must be >= 8");
    if (plan.steps % quad_points != 0)
        throw argument_error("duhamel_residual: quad_points must divide plan.steps");

    EvolutionPlan quad_plan(plan.hamiltonian, plan.dt, plan.steps, plan.steps / quad_points);
    const EvolveResult run = evolve(f, quad_plan);
    const double t = plan.steps * plan.dt;
    const double tau = plan.hamiltonian.tau;
    const auto v = eval_potential(plan.hamiltonian.potential, f.grid);

    double v_max = 0.0;
    for (double vv : v) v_max = std::max(v_max, std::abs(vv));

    // Right side: e^{-itH0} f - i sum_j w_j e^{-i(t-s_j)H0} (V u(s_j)) ds.
    // The integral term vanishes identically for V = 0.
    WaveFunction rhs = propagate_exact(f, PropagatorParams(tau, t));
    const std::size_t n_nodes = v_max == 0.0 ? 0 : run.series.times.size();
    const double ds = t / quad_points;
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const double s = run.series.times[j];
        WaveFunction vu = run.series.states[j];
        for (std::size_t i = 0; i < vu.values.size(); ++i) vu.values[i] *= v[i];
        const WaveFunction outer = propagate_exact(vu, PropagatorParams(tau, t - s));
        const double w = (j == 0 || j + 1 == n_nodes) ? 0.5 : 1.0;
        const cdouble factor = cdouble(0.0, -1.0) * (w * ds);
        for (std::size_t i = 0; i < rhs.values.size(); ++i) rhs.values[i] += factor * outer.values[i];
    }

    const WaveFunction& lhs = run.series.states.back();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
        num += std::norm(lhs.values[i] - rhs.values[i]);
        den += std::norm(lhs.values[i]);
    }
    if (den == 0.0) throw numeric_error("duhamel_residual: zero state");
    return std::sqrt(num / den);
}

}  // namespace repulse
