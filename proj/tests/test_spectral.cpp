#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "repulse/mehler.hpp"
#include "repulse/spectral.hpp"

using namespace repulse;

TEST_CASE("assembled matrix has the specified stencil and symmetry") {
    const Grid g(1, 8.0, 256);
    HamiltonianSpec spec(1.0, PotentialSpec::power(1.0, 0.5));
    const auto h = assemble(g, spec);
    const double dx = g.spacing();
    // center node x = 0: diagonal 2/dx^2 + V(0)
    CHECK(h.diag[128] == doctest::Approx(2.0 / (dx * dx) + 1.0).epsilon(1e-14));
    CHECK(h.off == doctest::Approx(-1.0 / (dx * dx)).epsilon(1e-14));
    // symmetry is structural (single off value), dimension guard instead:
    CHECK_THROWS_AS(assemble(Grid(2, 8.0, 64), spec), argument_error);
}

TEST_CASE("Dirichlet Laplacian lowest eigenvalue matches the continuum oracle") {
    const Grid g(1, 3.0, 1024);
    const auto h = DiscreteHamiltonian::build(g, 0.0, std::vector<double>(1024, 0.0));
    const double ell = (1024 + 1) * g.spacing();  // effective Dirichlet box length
    const double want = std::pow(M_PI / ell, 2.0);
    CHECK(lowest_eigenvalue(h) == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("Sturm counting is consistent with dense eigenvalues") {
    const Grid g(1, 4.0, 64);
    const auto h = assemble(g, HamiltonianSpec(1.0, PotentialSpec::power(0.5, 1.0)));
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(64, 64);
    for (int i = 0; i < 64; ++i) {
        M(i, i) = h.diag[i];
        if (i + 1 < 64) M(i, i + 1) = M(i + 1, i) = h.off;
    }
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues();
    for (double t : {-10.0, 0.0, 3.0, 50.0, 500.0}) {
        int want = 0;
        for (int i = 0; i < 64; ++i)
            if (ev(i) < t) ++want;
        CHECK(eigenvalue_count_below(h, t) == want);
    }
    CHECK(lowest_eigenvalue(h) == doctest::Approx(ev(0)).epsilon(1e-8));
}

TEST_CASE("complex tridiagonal solve matches a dense solve") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    const Grid g(1, 4.0, 64);
    const auto h = assemble(g, HamiltonianSpec(1.0, PotentialSpec::power(0.3, 1.0)));
    // exercise through weighted_resolvent_norm's solve path indirectly: compare
    // (h - z)^{-1} b via the resolvent apply against Eigen's dense LU.
    const cdouble z(3.7, 0.9);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(64, 64);
    for (int i = 0; i < 64; ++i) {
        M(i, i) = h.diag[i] - z;
        if (i + 1 < 64) M(i, i + 1) = M(i + 1, i) = h.off;
    }
    // Reconstruct a solve through the public norm estimator with weight 1 is
    // rank-reduced, so validate via the identity ||T|| == ||dense T|| instead.
    ResolventQuery q;
    q.lambda = 3.7;
    q.nu = 0.9;
    q.nu0 = 1.0;
    q.weight_exponent = 0.7;
    const auto est = weighted_resolvent_norm(h, q, 9);
    Eigen::VectorXd w(64);
    const auto x = g.axis_nodes();
    for (int i = 0; i < 64; ++i) w(i) = std::pow(1.0 + x[i] * x[i], -0.35);
    const Eigen::MatrixXcd T = w.asDiagonal() * M.inverse() * w.asDiagonal();
    const double want = T.jacobiSvd().singularValues()(0);
    CHECK(est.norm == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("weight == 1 norm saturates the spectral bound 1/nu near an eigenvalue") {
    const Grid g(1, 8.0, 512);
    const auto h = assemble(g, HamiltonianSpec(1.0, PotentialSpec::power(1.0, 1.0)));
    // locate an eigenvalue near 5
    double lo = 4.0, hi = 6.0;
    const int c0 = eigenvalue_count_below(h, lo);
    while (eigenvalue_count_below(h, hi) == c0) hi += 0.5;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (eigenvalue_count_below(h, mid) > c0) ? hi = mid : lo = mid;
    }
    ResolventQuery q;
    q.lambda = 0.5 * (lo + hi);
    q.nu = 0.01;
    q.nu0 = 1.0;
    q.weight_exponent = 0.0;
    const auto est = weighted_resolvent_norm(h, q, 3);
    CHECK(est.norm <= 1.0 / q.nu + 1e-6);
    CHECK(est.norm * q.nu == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("the +- resolvent branches have equal weighted norms") {
    const Grid g(1, 8.0, 512);
    const auto h = assemble(g, HamiltonianSpec(1.0, PotentialSpec::power(1.0, 1.0)));
    ResolventQuery q;
    q.lambda = 4.0;
    q.nu = 1.0;
    q.nu0 = 1.0;
    q.weight_kind = WeightKind::potential_weight;
    q.sign = +1;
    const auto plus = weighted_resolvent_norm(h, q, 17);
    q.sign = -1;
    const auto minus = weighted_resolvent_norm(h, q, 17);
    CHECK(std::abs(plus.norm - minus.norm) <= 1e-8 * plus.norm);
}

TEST_CASE("certificate floor raises the documented resolution error") {
    const Grid g(1, 8.0, 512);
    const auto h = assemble(g, HamiltonianSpec(1.0, PotentialSpec::power(1.0, 1.0)));
    ResolventQuery q;
    q.lambda = 4.0;
    q.nu = 1.0;
    q.nu0 = 1.0;
    q.min_certificate = 10.0;  // the level spacing here is O(1), so nu/spacing << 10
    CHECK_THROWS_AS(weighted_resolvent_norm(h, q, 1), precondition_error);
    CHECK_THROWS_AS([&] {
        ResolventQuery bad;
        bad.nu = 2.0;
        bad.nu0 = 1.0;
        bad.validate();
    }(), argument_error);
}

TEST_CASE("high-energy scan: theta = 0 reproduces the unweighted norm") {
    const Grid g(1, 8.0, 512);
    const auto h = assemble(g, HamiltonianSpec(1.0));
    const auto scan = high_energy_scan(h, {0.0}, {50.0, 100.0}, 4.0, 21);
    for (const auto& row : scan.scan.rows) {
        ResolventQuery q;
        q.lambda = row.lambda;
        q.nu = 4.0;
        q.nu0 = 4.0;
        q.weight_exponent = 0.0;
        const auto want = weighted_resolvent_norm(h, q, 21);
        CHECK(std::abs(row.norm - want.norm) < 1e-10);
    }
}

TEST_CASE("birman-schwinger identity: degenerate and scaled potentials") {
    const Grid g(1, 8.0, 256);
    ResolventQuery q;
    q.lambda = 100.0;
    q.nu = 0.5;
    q.nu0 = 1.0;
    // V = 0: both sides vanish
    {
        const auto res = birman_schwinger_check(g, HamiltonianSpec(1.0), q);
        CHECK(res.discrepancy == 0.0);
    }
    for (double c : {0.1, 0.3}) {
        const auto res = birman_schwinger_check(g, HamiltonianSpec(1.0, PotentialSpec::power(c, 1.0)), q);
        CHECK(res.discrepancy <= 1e-6);
        CHECK(res.condition_estimate < 1e8);
    }
}

TEST_CASE("smoothing integral: zero potential, phase invariance, quadratic scaling") {
    const Grid g(1, 16.0, 256);
    const WaveFunction f = make_gaussian(g, {0.0}, 0.5, {0.0});
    // V = 0 -> exactly zero
    {
        HamiltonianSpec spec(0.5);
        EvolutionPlan plan(spec, 1.0 / 256, 128, 8);
        CHECK(smoothing_integral(f, spec, plan).value == 0.0);
    }
    HamiltonianSpec spec(0.5, PotentialSpec::power(0.3, 1.0));
    EvolutionPlan plan(spec, 1.0 / 256, 128, 8);
    const auto base = smoothing_integral(f, spec, plan);
    CHECK(base.norm_f_sq == doctest::Approx(lr_norm(f, 2.0) * lr_norm(f, 2.0)).epsilon(1e-12));

    WaveFunction rotated = f;
    for (auto& z : rotated.values) z *= std::polar(1.0, 1.2345);
    const auto rot = smoothing_integral(rotated, spec, plan);
    CHECK(std::abs(rot.value - base.value) <= 1e-10 * base.value);

    WaveFunction doubled = f;
    for (auto& z : doubled.values) z *= 2.0;
    const auto twice = smoothing_integral(doubled, spec, plan);
    CHECK(twice.value / base.value == doctest::Approx(4.0).epsilon(1e-8));
}
