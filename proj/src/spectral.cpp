#include "repulse/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "repulse/numerics.hpp"

namespace repulse {

namespace {

using cvec = std::vector<cdouble>;

// Complex tridiagonal solve (d - shift on the diagonal handled by the caller)
// with partial pivoting and one fill-in superdiagonal, LAPACK gtsv style.
class TridiagSolver {
public:
    TridiagSolver(const std::vector<double>& diag, double off, cdouble shift)
        : n_(static_cast<int>(diag.size())), dl_(n_, 0.0), d_(n_), du_(n_, 0.0), du2_(n_, 0.0),
          pivot_(n_, 0) {
        for (int i = 0; i < n_; ++i) d_[i] = cdouble(diag[i], 0.0) - shift;
        for (int i = 0; i + 1 < n_; ++i) {
            dl_[i] = cdouble(off, 0.0);  // subdiagonal multiplier slot (row i+1)
            du_[i] = cdouble(off, 0.0);  // superdiagonal of row i
        }
        factorize();
    }

    void solve(cvec& b) const {
        // forward substitution with recorded row interchanges
        for (int i = 0; i + 1 < n_; ++i) {
            if (pivot_[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= mult_[i] * b[i];
        }
        // back substitution with two superdiagonals
        b[n_ - 1] /= d_[n_ - 1];
        if (n_ >= 2) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
        for (int i = n_ - 3; i >= 0; --i)
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }

private:
    void factorize() {
        mult_.assign(n_, cdouble{0.0, 0.0});
        for (int i = 0; i + 1 < n_; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                pivot_[i] = 0;
                if (d_[i] == cdouble{0.0, 0.0}) throw numeric_error("TridiagSolver: zero pivot");
                const cdouble m = dl_[i] / d_[i];
                mult_[i] = m;
                d_[i + 1] -= m * du_[i];
                // du2_[i] stays 0 without a swap
            } else {
                pivot_[i] = 1;
                const cdouble m = d_[i] / dl_[i];
                mult_[i] = m;
                // swapped rows: new row i = old row i+1
                const cdouble di1 = d_[i + 1];
                const cdouble dui1 = (i + 2 < n_) ? du_[i + 1] : cdouble{0.0, 0.0};
                d_[i] = dl_[i];
                du2_[i] = dui1;
                const cdouble du_old = du_[i];
                du_[i] = di1;
                d_[i + 1] = du_old - m * di1;
                if (i + 2 < n_) du_[i + 1] = -m * dui1;
            }
        }
        if (d_[n_ - 1] == cdouble{0.0, 0.0}) throw numeric_error("TridiagSolver: zero pivot");
    }

    int n_;
    cvec dl_, d_, du_, du2_, mult_;
    std::vector<int> pivot_;
};

std::vector<double> make_weight(const DiscreteHamiltonian& h, const ResolventQuery& q) {
    const int N = h.size();
    std::vector<double> w(N);
    const auto x = h.grid.axis_nodes();
    if (q.weight_kind == WeightKind::x_weight) {
        for (int j = 0; j < N; ++j) w[j] = std::pow(1.0 + x[j] * x[j], -0.5 * q.weight_exponent);
    } else {
        for (int j = 0; j < N; ++j) w[j] = std::sqrt(std::abs(h.potential_values[j]));
    }
    return w;
}

double vec_norm(const cvec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

DiscreteHamiltonian DiscreteHamiltonian::build(const Grid& grid, double tau,
                                               const std::vector<double>& potential) {
    if (grid.dimension() != 1)
        throw argument_error("DiscreteHamiltonian: only dimension 1 is supported");
    const int N = grid.points_per_axis();
    if (potential.size() != static_cast<std::size_t>(N))
        throw argument_error("DiscreteHamiltonian: potential size mismatch");
    DiscreteHamiltonian h{grid, tau, {}, 0.0, potential};
    const double dx = grid.spacing();
    const auto x = grid.axis_nodes();
    h.off = -1.0 / (dx * dx);
    h.diag.resize(N);
    for (int j = 0; j < N; ++j) h.diag[j] = 2.0 / (dx * dx) - tau * tau * x[j] * x[j] + potential[j];
    return h;
}

DiscreteHamiltonian assemble(const Grid& grid, const HamiltonianSpec& spec) {
    if (grid.dimension() != 1)
        throw argument_error("assemble: unsupported dimension (n = 1 only)");
    if (grid.points_per_axis() > (1 << 14))
        throw argument_error("assemble: N must not exceed 2^14");
    return DiscreteHamiltonian::build(grid, spec.tau, eval_potential(spec.potential, grid));
}

int eigenvalue_count_below(const DiscreteHamiltonian& h, double t) {
    // Sturm sequence: the number of negative pivots of LDL^T of (h - t).
    const int N = h.size();
    const double b2 = h.off * h.off;
    int count = 0;
    double d = h.diag[0] - t;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
    for (int i = 1; i < N; ++i) {
        d = (h.diag[i] - t) - b2 / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

double lowest_eigenvalue(const DiscreteHamiltonian& h, double tol) {
    double lo = h.diag[0], hi = h.diag[0];
    for (double d : h.diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::abs(h.off) + 1.0;
    hi += 2.0 * std::abs(h.off) + 1.0;
    while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (eigenvalue_count_below(h, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double local_level_spacing(const DiscreteHamiltonian& h, double lambda, double initial_half_width) {
    double w = std::max(initial_half_width, 1e-12);
    const int total = h.size();
    for (int tries = 0; tries < 60; ++tries) {
        const int c = eigenvalue_count_below(h, lambda + w) - eigenvalue_count_below(h, lambda - w);
        if (c >= 2) return 2.0 * w / c;
        if (eigenvalue_count_below(h, lambda - w) == 0 && eigenvalue_count_below(h, lambda + w) == total)
            return 2.0 * w / std::max(c, 1);
        w *= 2.0;
    }
    return 2.0 * w;
}

ResolventEstimate weighted_resolvent_norm(const DiscreteHamiltonian& h, const ResolventQuery& query,
                                          unsigned long long seed) {
    query.validate();
    const int N = h.size();

    ResolventEstimate est;
    const double spacing = local_level_spacing(h, query.lambda, 5.0 * query.nu);
    est.certificate = query.nu / spacing;
    if (query.min_certificate > 0.0 && est.certificate < query.min_certificate)
        throw precondition_error(
            "weighted_resolvent_norm: certificate nu/spacing = " + std::to_string(est.certificate) +
                " below the resolution floor " + std::to_string(query.min_certificate) +
                "; increase L or N, or take nu larger",
            est.certificate);

    const std::vector<double> w = make_weight(h, query);
    const cdouble shift(query.lambda, query.sign > 0 ? query.nu : -query.nu);
    const TridiagSolver fwd(h.diag, h.off, shift);
    const TridiagSolver adj(h.diag, h.off, std::conj(shift));

    // Power iteration on T*T with T = W (h - shift)^{-1} W; a real start vector
    // keeps the +-nu cases bitwise symmetric.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    cvec v(N);
    for (auto& z : v) z = cdouble(gauss(rng), 0.0);
    {
        const double nv = vec_norm(v);
        for (auto& z : v) z /= nv;
    }

    cvec y(N), z(N);
    double sigma_prev = -1.0;
    const int max_iterations = 500;
    for (int it = 1; it <= max_iterations; ++it) {
        for (int i = 0; i < N; ++i) y[i] = v[i] * w[i];
        fwd.solve(y);
        for (int i = 0; i < N; ++i) y[i] *= w[i];
        const double sigma = vec_norm(y);  // ||T v||, v unit
        if (!std::isfinite(sigma) || sigma == 0.0)
            throw numeric_error("weighted_resolvent_norm: power iteration broke down");

        for (int i = 0; i < N; ++i) z[i] = y[i] * w[i];
        adj.solve(z);
        for (int i = 0; i < N; ++i) z[i] *= w[i];

        const double nz = vec_norm(z);
        for (int i = 0; i < N; ++i) v[i] = z[i] / nz;

        est.norm = sigma;
        est.iterations = it;
        if (sigma_prev > 0.0 && std::abs(sigma - sigma_prev) <= 1e-6 * sigma) break;
        sigma_prev = sigma;
    }
    return est;
}

HighEnergyScan high_energy_scan(const DiscreteHamiltonian& h, const std::vector<double>& thetas,
                                const std::vector<double>& lambdas, double nu,
                                unsigned long long seed) {
    if (lambdas.size() < 2) throw argument_error("high_energy_scan: need at least 2 lambdas");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw argument_error("high_energy_scan: lambdas must be positive");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
            throw argument_error("high_energy_scan: lambdas must be increasing");
    }
    for (double th : thetas)
        if (th < 0.0 || th > 2.0) throw argument_error("high_energy_scan: thetas must lie in [0, 2]");

    // Free operator: strip V.
    std::vector<double> zero(h.size(), 0.0);
    const DiscreteHamiltonian h0 = DiscreteHamiltonian::build(h.grid, h.tau, zero);

    HighEnergyScan out;
    out.thetas = thetas;
    for (double th : thetas) {
        std::vector<double> lx, ly;
        for (double lam : lambdas) {
            ResolventQuery q;
            q.lambda = lam;
            q.nu = nu;
            q.nu0 = nu;
            q.sign = +1;
            q.weight_exponent = th;
            q.weight_kind = WeightKind::x_weight;
            const ResolventEstimate e = weighted_resolvent_norm(h0, q, seed);
            out.scan.rows.push_back(ScanRow{lam, nu, th, +1, e.norm, e.certificate});
            lx.push_back(std::log(lam));
            ly.push_back(std::log(e.norm));
        }
        out.slopes.push_back(least_squares_line(lx, ly).slope);
    }
    return out;
}

BirmanSchwingerResult birman_schwinger_check(const Grid& grid, const HamiltonianSpec& spec,
                                             const ResolventQuery& query) {
    query.validate();
    const DiscreteHamiltonian h = assemble(grid, spec);
    const int N = h.size();
    const auto v = h.potential_values;

    using Mat = Eigen::MatrixXcd;
    Mat H0 = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        H0(i, i) = h.diag[i] - v[i];
        if (i + 1 < N) {
            H0(i, i + 1) = h.off;
            H0(i + 1, i) = h.off;
        }
    }
    Mat H = H0;
    for (int i = 0; i < N; ++i) H(i, i) += v[i];

    const cdouble z(query.lambda, query.sign > 0 ? query.nu : -query.nu);
    Mat H0z = H0 - z * Mat::Identity(N, N);
    Mat Hz = H - z * Mat::Identity(N, N);

    // rho1 = |V|^{1/2} sign(V) (sign(0) := 0), rho2 = |V|^{1/2}; rho1 rho2 = V pointwise.
    Eigen::VectorXcd rho1(N), rho2(N);
    for (int i = 0; i < N; ++i) {
        const double root = std::sqrt(std::abs(v[i]));
        const double sgn = (v[i] > 0.0) ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
        rho1(i) = root * sgn;
        rho2(i) = root;
    }

    const Mat R0 = H0z.partialPivLu().solve(Mat::Identity(N, N));
    const Mat R = Hz.partialPivLu().solve(Mat::Identity(N, N));

    const Mat A = rho1.asDiagonal() * R0 * rho2.asDiagonal();
    const Mat lhs = rho1.asDiagonal() * R * rho2.asDiagonal() - A;
    const Mat one_plus_a = Mat::Identity(N, N) + A;

    Eigen::PartialPivLU<Mat> lu(one_plus_a);
    const Mat inv_one_plus_a = lu.solve(Mat::Identity(N, N));

    BirmanSchwingerResult res;
    res.condition_estimate = one_plus_a.norm() * inv_one_plus_a.norm();  // Frobenius bound on kappa
    if (res.condition_estimate > 1e8)
        throw precondition_error("birman_schwinger_check: Birman-Schwinger operator is near-singular, "
                                 "condition estimate " + std::to_string(res.condition_estimate),
                                 res.condition_estimate);

    const Mat rhs = -A * inv_one_plus_a * A;

    const double lhs_scale = lhs.operatorNorm();
    const double gap = (lhs - rhs).operatorNorm();
    res.discrepancy = (lhs_scale > 0.0) ? gap / lhs_scale : gap;
    return res;
}

SmoothingResult smoothing_integral(const WaveFunction& f, const HamiltonianSpec& spec,
                                   const EvolutionPlan& plan) {
    const double dt = std::abs(plan.dt);
    EvolutionPlan forward(spec, dt, plan.steps, plan.record_every);
    EvolutionPlan backward(spec, -dt, plan.steps, plan.record_every);
    const EvolveResult runf = evolve(f, forward);
    const EvolveResult runb = evolve(f, backward);

    const auto v = eval_potential(spec.potential, f.grid);
    const double cell = std::pow(f.grid.spacing(), f.grid.dimension());
    auto integrand = [&](const WaveFunction& u) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) s += std::abs(v[i]) * std::norm(u.values[i]);
        return cell * s;
    };

    // Assemble t in [-T, T]: reversed backward branch then the forward branch.
    std::vector<double> t, g;
    for (std::size_t i = runb.series.times.size(); i-- > 1;) {
        t.push_back(runb.series.times[i]);
        g.push_back(integrand(runb.series.states[i]));
    }
    for (std::size_t i = 0; i < runf.series.times.size(); ++i) {
        t.push_back(runf.series.times[i]);
        g.push_back(integrand(runf.series.states[i]));
    }

    SmoothingResult res;
    res.T = plan.steps * dt;
    res.norm_f_sq = lr_norm(f, 2.0);
    res.norm_f_sq *= res.norm_f_sq;
    res.value = trapezoid(t, g);

    double half = 0.0;
    const double half_T = 0.5 * res.T;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double piece = 0.5 * (t[i] - t[i - 1]) * (g[i] + g[i - 1]);
        if (t[i - 1] >= -half_T && t[i] <= half_T) half += piece;
    }
    res.saturation_increment = (half > 0.0) ? res.value / half - 1.0 : 0.0;
    return res;
}

}  // namespace repulse
