#pragma once

#include <string>
#include <vector>

#include "repulse/rational.hpp"

namespace repulse {

// An extended exponent on [1, inf]; infinity is represented exactly, never as
// a large float, so endpoint verdicts are tie-free.
class Exponent {
public:
    Exponent(const Rational& v) : infinite_(false), value_(v) {
        if (v < Rational(1)) throw argument_error("Exponent: must be >= 1");
    }
    Exponent(long long v) : Exponent(Rational(v)) {}

    static Exponent infinity() {
        Exponent e;
        return e;
    }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const {
        if (infinite_) throw argument_error("Exponent: infinite value has no rational form");
        return value_;
    }
    // 1/q with the convention 1/inf = 0.
    Rational reciprocal() const { return infinite_ ? Rational(0) : Rational(value_.den(), value_.num()); }

    bool operator==(const Exponent& o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return value_ == o.value_;
    }
    bool operator>=(const Rational& r) const { return infinite_ || value_ >= r; }

    std::string str() const { return infinite_ ? "inf" : value_.str(); }

private:
    Exponent() : infinite_(true), value_(Rational(1)) {}
    bool infinite_;
    Rational value_;
};

// Construct an exponent from its reciprocal in [0, 1/2] (lattice coordinates).
inline Exponent exponent_from_reciprocal(const Rational& inv) {
    if (inv < Rational(0) || inv > Rational(1)) throw argument_error("exponent_from_reciprocal: need 0 <= 1/q <= 1");
    if (inv == Rational(0)) return Exponent::infinity();
    return Exponent(Rational(inv.den(), inv.num()));
}

struct Pair {
    Exponent q;
    Exponent r;
};

struct Verdict {
    bool admissible = false;
    bool on_boundary = false;   // equality in 1/q + n/(2r) = n/4
    bool is_endpoint = false;   // n >= 3 and (q, r) = (2, 2n/(n-2))
    bool degenerate_upper_bound = false;  // kappa q <= 2: the r upper bound of the
                                          // kappa line is undefined and was skipped
    std::vector<std::string> violated;
};

// Region classifier: q >= 2, r >= 2 and 1/q + n/(2r) >= n/4, all exact.
Verdict classify_repulsive(const Pair& pair, int n);

// Line classifier: 1/q + kappa/r = kappa/2 with 2 <= q and 2 <= r <= 2 kappa q/(kappa q - 2),
// kappa >= n/2.  Every admissible pair here is checked to be repulsive-admissible.
Verdict classify_kappa(const Pair& pair, const Rational& kappa, int n);

struct RegionSample {
    Rational inv_q;
    Rational inv_r;
    Verdict verdict;
};

// Uniform lattice over (1/q, 1/r) in [0, 1/2]^2 with (resolution+1) points per side.
std::vector<RegionSample> sample_region(int n, int resolution);

}  // namespace repulse
