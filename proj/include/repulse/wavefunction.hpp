#pragma once

#include <complex>
#include <vector>

#include "repulse/grid.hpp"

namespace repulse {

using cdouble = std::complex<double>;

// State u on a Grid, row-major over axes (index i*N + j in 2-d).
struct WaveFunction {
    Grid grid;
    std::vector<cdouble> values;

    explicit WaveFunction(const Grid& g) : grid(g), values(g.total_points(), cdouble{0.0, 0.0}) {}
    WaveFunction(const Grid& g, std::vector<cdouble> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.total_points())
            throw argument_error("WaveFunction: value count does not match grid");
    }

    bool all_finite() const {
        for (const auto& z : values)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }
};

// values_j = exp(-a|x_j - center|^2 / 2 + i momentum . x_j)
WaveFunction make_gaussian(const Grid& grid, const std::vector<double>& center, double width,
                           const std::vector<double>& momentum);

}  // namespace repulse
