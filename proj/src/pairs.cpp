#include "repulse/pairs.hpp"

namespace repulse {

Verdict classify_repulsive(const Pair& pair, int n) {
    if (n < 1) throw argument_error("classify_repulsive: n must be >= 1");
    Verdict v;

    const Rational two(2);
    if (!(pair.q >= two)) v.violated.push_back("q >= 2");
    if (!(pair.r >= two)) v.violated.push_back("r >= 2");

    // 1/q + n/(2r) >= n/4 with 1/inf = 0.  The equivalent form r <= 2n/(n - 4/q)
    // carries a sign caveat, so the sum form is the single source of truth.
    const Rational lhs = pair.q.reciprocal() + Rational(n, 2) * pair.r.reciprocal();
    const Rational rhs(n, 4);
    if (lhs < rhs) v.violated.push_back("1/q + n/(2r) >= n/4");

    v.admissible = v.violated.empty();
    v.on_boundary = (lhs == rhs);
    v.is_endpoint = false;
    if (n >= 3 && !pair.q.is_infinite() && !pair.r.is_infinite()) {
        v.is_endpoint = v.admissible && pair.q.value() == Rational(2) &&
                        pair.r.value() == Rational(2LL * n, static_cast<long long>(n) - 2);
    }
    return v;
}

Verdict classify_kappa(const Pair& pair, const Rational& kappa, int n) {
    if (n < 1) throw argument_error("classify_kappa: n must be >= 1");
    if (kappa < Rational(n, 2))
        throw argument_error("classify_kappa: kappa must satisfy kappa >= n/2");

    Verdict v;
    const Rational two(2);
    if (!(pair.q >= two)) v.violated.push_back("q >= 2");
    if (!(pair.r >= two)) v.violated.push_back("r >= 2");

    // Equality 1/q + kappa/r = kappa/2.
    const Rational lhs = pair.q.reciprocal() + kappa * pair.r.reciprocal();
    const Rational rhs = kappa / Rational(2);
    if (lhs != rhs) v.violated.push_back("1/q + kappa/r = kappa/2");

    // Upper range bound r <= 2 kappa q / (kappa q - 2), undefined when kappa q <= 2.
    if (pair.q.is_infinite()) {
        // kappa q -> inf: bound degenerates to r <= 2, combined with r >= 2 forces r = 2.
        if (!pair.r.is_infinite() && !(pair.r.value() <= Rational(2)))
            v.violated.push_back("r <= 2 kappa q/(kappa q - 2)");
        else if (pair.r.is_infinite())
            v.violated.push_back("r <= 2 kappa q/(kappa q - 2)");
    } else {
        const Rational kq = kappa * pair.q.value();
        if (kq <= Rational(2)) {
            v.degenerate_upper_bound = true;  // bound undefined; only the equality constrains
        } else {
            const Rational bound = Rational(2) * kq / (kq - Rational(2));
            if (pair.r.is_infinite() || !(pair.r.value() <= bound))
                v.violated.push_back("r <= 2 kappa q/(kappa q - 2)");
        }
    }

    v.admissible = v.violated.empty();

    // A kappa-admissible pair always lies in the repulsive-admissible region.
    if (v.admissible) {
        const Verdict cross = classify_repulsive(pair, n);
        if (!cross.admissible)
            throw numeric_error("classify_kappa: internal error, kappa-admissible pair not repulsive-admissible");
        v.on_boundary = cross.on_boundary;
        v.is_endpoint = cross.is_endpoint;
    }
    return v;
}

std::vector<RegionSample> sample_region(int n, int resolution) {
    if (n < 1) throw argument_error("sample_region: n must be >= 1");
    if (resolution < 2) throw argument_error("sample_region: resolution must be >= 2");

    std::vector<RegionSample> out;
    out.reserve(static_cast<std::size_t>(resolution + 1) * (resolution + 1));
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; j <= resolution; ++j) {
            RegionSample s{Rational(i, 2LL * resolution), Rational(j, 2LL * resolution), Verdict{}};
            const Pair p{exponent_from_reciprocal(s.inv_q), exponent_from_reciprocal(s.inv_r)};
            s.verdict = classify_repulsive(p, n);
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace repulse
