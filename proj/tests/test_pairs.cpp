#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "repulse/pairs.hpp"

using namespace repulse;

namespace {

Pair make_pair(long long qn, long long qd, long long rn, long long rd) {
    return Pair{Exponent(Rational(qn, qd)), Exponent(Rational(rn, rd))};
}

// Independent re-evaluation of the region constraints by 128-bit cross
// multiplication on raw fractions, bypassing the Rational class entirely.
bool brute_admissible(long long iq_n, long long iq_d, long long ir_n, long long ir_d, int n) {
    using ll = __int128;
    // q >= 2 <=> 1/q <= 1/2; same for r.
    if (!(ll(iq_n) * 2 <= ll(iq_d))) return false;
    if (!(ll(ir_n) * 2 <= ll(ir_d))) return false;
    // 1/q + n/(2r) >= n/4  <=>  4*(iq + n/2*ir) >= n  with common denominators
    // lhs = iq_n/iq_d + n*ir_n/(2*ir_d); compare lhs >= n/4:
    // 4*(iq_n*2*ir_d + n*ir_n*iq_d) >= n * (2*ir_d*iq_d) ... using denominator 2*iq_d*ir_d
    const ll lhs_num = ll(iq_n) * 2 * ir_d + ll(n) * ir_n * iq_d;  // over 2*iq_d*ir_d
    return 4 * lhs_num >= ll(n) * 2 * iq_d * ir_d;
}

}  // namespace

TEST_CASE("rational arithmetic reduces and compares exactly") {
    CHECK(Rational(4, 2) == Rational(2, 1));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1, 0), argument_error);
}

TEST_CASE("named region verdicts") {
    // (inf, 2): equality 0 + n/4 = n/4 for every n
    for (int n : {1, 2, 3, 5}) {
        const Pair p{Exponent::infinity(), Exponent(Rational(2))};
        const Verdict v = classify_repulsive(p, n);
        CHECK(v.admissible);
        CHECK(v.on_boundary);
    }
    // (2, 6) at n = 3 is the admissible boundary endpoint
    {
        const Verdict v = classify_repulsive(make_pair(2, 1, 6, 1), 3);
        CHECK(v.admissible);
        CHECK(v.on_boundary);
        CHECK(v.is_endpoint);
    }
    // (2, 8) at n = 3 violates the sum inequality: 1/2 + 3/16 < 3/4
    {
        const Verdict v = classify_repulsive(make_pair(2, 1, 8, 1), 3);
        CHECK_FALSE(v.admissible);
        REQUIRE(v.violated.size() == 1);
        CHECK(v.violated[0] == "1/q + n/(2r) >= n/4");
    }
    // (1.5, 4) fails only the q bound
    {
        const Verdict v = classify_repulsive(make_pair(3, 2, 4, 1), 1);
        CHECK_FALSE(v.admissible);
        REQUIRE(v.violated.size() == 1);
        CHECK(v.violated[0] == "q >= 2");
    }
}

TEST_CASE("kappa line verdicts, degenerate upper bound, argument errors") {
    // kappa = n/2 = 1 at n = 2: (2, inf) sits on the line; kappa*q = 2 is the
    // degenerate case handled by the equality alone.
    {
        const Pair p{Exponent(Rational(2)), Exponent::infinity()};
        const Verdict v = classify_kappa(p, Rational(1), 2);
        CHECK(v.admissible);
        CHECK(v.degenerate_upper_bound);
    }
    {
        const Verdict v = classify_kappa(make_pair(4, 1, 4, 1), Rational(1), 2);
        CHECK(v.admissible);
        CHECK_FALSE(v.degenerate_upper_bound);
    }
    // off the line
    {
        const Verdict v = classify_kappa(make_pair(4, 1, 8, 1), Rational(1), 2);
        CHECK_FALSE(v.admissible);
    }
    CHECK_THROWS_AS(classify_kappa(make_pair(2, 1, 2, 1), Rational(1, 4), 1), argument_error);
}

TEST_CASE("Hoelder-reduction pairs (2, 2mu/(mu-2)) are repulsive-admissible at n = 3") {
    for (long long mu : {8, 16}) {
        const Pair p = make_pair(2, 1, 2 * mu, mu - 2);
        CHECK(classify_repulsive(p, 3).admissible);
    }
}

TEST_CASE("region sampling: corner cases and independent recheck") {
    const auto samples = sample_region(1, 2);
    REQUIRE(samples.size() == 9);
    // the (1/q, 1/r) = (0, 0) corner is (inf, inf): 0 >= 1/4 fails
    bool corner_seen = false;
    for (const auto& s : samples) {
        if (s.inv_q == Rational(0) && s.inv_r == Rational(0)) {
            corner_seen = true;
            CHECK_FALSE(s.verdict.admissible);
        }
    }
    CHECK(corner_seen);

    // every verdict agrees with brute-force rational evaluation
    for (int n : {1, 2, 3}) {
        for (const auto& s : sample_region(n, 17)) {
            const bool want = brute_admissible(s.inv_q.num(), s.inv_q.den(), s.inv_r.num(),
                                               s.inv_r.den(), n);
            CHECK(s.verdict.admissible == want);
        }
    }

    // endpoint present at (1/2, 1/6) for n = 3
    bool endpoint_seen = false;
    for (const auto& s : sample_region(3, 6))
        if (s.inv_q == Rational(1, 2) && s.inv_r == Rational(1, 6)) {
            endpoint_seen = true;
            CHECK(s.verdict.is_endpoint);
        }
    CHECK(endpoint_seen);

    CHECK_THROWS_AS(sample_region(3, 1), argument_error);
}

TEST_CASE("property: admissibility is monotone toward smaller q and r") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> num(0, 40);
    for (int rep = 0; rep < 400; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const Rational iq(num(rng), 80), ir(num(rng), 80);
        const Pair p{exponent_from_reciprocal(iq), exponent_from_reciprocal(ir)};
        if (!classify_repulsive(p, n).admissible) continue;
        // increase the reciprocals (decrease q, r) while keeping them <= 1/2
        const Rational iq2 = iq + Rational(1 + static_cast<long long>(rng() % 3), 80);
        const Rational ir2 = ir + Rational(1 + static_cast<long long>(rng() % 3), 80);
        if (iq2 > Rational(1, 2) || ir2 > Rational(1, 2)) continue;
        const Pair finer{exponent_from_reciprocal(iq2), exponent_from_reciprocal(ir2)};
        CHECK(classify_repulsive(finer, n).admissible);
    }
}

TEST_CASE("property: every kappa-admissible pair is repulsive-admissible") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 600; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const Rational kappa = Rational(n, 2) + Rational(static_cast<long long>(rng() % 12), 4);
        // choose r >= 2 rational and solve 1/q = kappa/2 - kappa/r for the line point
        const Rational r(2 + static_cast<long long>(rng() % 20), 1 + static_cast<long long>(rng() % 3));
        if (r < Rational(2)) continue;
        const Rational inv_q = kappa / Rational(2) - kappa / r;
        if (inv_q > Rational(1, 2) || inv_q < Rational(0)) continue;
        const Pair p{exponent_from_reciprocal(inv_q), Exponent(r)};
        const Verdict v = classify_kappa(p, kappa, n);
        if (v.admissible) {
            CHECK(classify_repulsive(p, n).admissible);  // also asserted internally
        }
    }
}

TEST_CASE("property: the kappa = n/2 line lies on the region boundary") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const Rational ir(static_cast<long long>(rng() % 41), 80);  // 1/r in [0, 1/2]
        const Rational iq = Rational(n, 4) - Rational(n, 2) * ir;   // boundary: 1/q + n/(2r) = n/4
        if (iq < Rational(0) || iq > Rational(1, 2)) continue;
        const Pair p{exponent_from_reciprocal(iq), exponent_from_reciprocal(ir)};
        CHECK(classify_repulsive(p, n).on_boundary);
    }
}

TEST_CASE("verdicts are identical on unreduced fractions") {
    const Verdict a = classify_repulsive(make_pair(2, 1, 6, 1), 3);
    const Verdict b = classify_repulsive(make_pair(14, 7, 42, 7), 3);
    CHECK(a.admissible == b.admissible);
    CHECK(a.on_boundary == b.on_boundary);
    CHECK(a.is_endpoint == b.is_endpoint);
}
