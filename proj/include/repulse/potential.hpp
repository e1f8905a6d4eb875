#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "repulse/errors.hpp"
#include "repulse/grid.hpp"

namespace repulse {

// Perturbation V.  power_decay is V(x) = c * <x>^{-delta} with <x> = (1+|x|^2)^{1/2};
// tabulated potentials are accepted as-is and flagged as unverified (no derivative
// bounds can be certified for a table).
struct PotentialSpec {
    enum class Kind { zero, power_decay, tabulated };

    Kind kind = Kind::zero;
    double amplitude = 0.0;   // c
    double decay = 1.0;       // delta > 0
    std::vector<double> table;

    static PotentialSpec make_zero() { return PotentialSpec{}; }

    static PotentialSpec power(double c, double delta) {
        if (!(delta > 0.0)) throw argument_error("PotentialSpec: decay delta must be positive");
        PotentialSpec p;
        p.kind = Kind::power_decay;
        p.amplitude = c;
        p.decay = delta;
        return p;
    }

    static PotentialSpec tabulated(std::vector<double> values) {
        for (double v : values)
            if (!std::isfinite(v)) throw argument_error("PotentialSpec: tabulated values must be finite");
        PotentialSpec p;
        p.kind = Kind::tabulated;
        p.table = std::move(values);
        return p;
    }

    // Derivative bounds hold by construction for zero/power_decay; a table cannot certify them.
    bool verified_class() const { return kind != Kind::tabulated; }

    std::string kind_name() const {
        switch (kind) {
            case Kind::zero: return "zero";
            case Kind::power_decay: return "power_decay";
            default: return "tabulated";
        }
    }
};

std::vector<double> eval_potential(const PotentialSpec& spec, const Grid& grid);

// H = -Laplace - tau^2 x^2 + V with tau != 0.
struct HamiltonianSpec {
    double tau;
    PotentialSpec potential;

    HamiltonianSpec(double tau_, PotentialSpec pot = PotentialSpec{})
        : tau(tau_), potential(std::move(pot)) {
        if (tau == 0.0) throw argument_error("HamiltonianSpec: tau must be nonzero");
    }
};

}  // namespace repulse
