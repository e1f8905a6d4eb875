#pragma once

#include <complex>
#include <vector>

#include "repulse/errors.hpp"

namespace repulse {

// Iterative radix-2 complex FFT.  Forward kernel e^{-2 pi i jk/N}, inverse
// carries the 1/N factor so inverse(forward(x)) == x.
class Fft {
public:
    explicit Fft(int n);

    int size() const { return n_; }
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;
    void forward(std::vector<std::complex<double>>& data) const { forward(data.data()); }
    void inverse(std::vector<std::complex<double>>& data) const { inverse(data.data()); }

private:
    void transform(std::complex<double>* data, bool invert) const;

    int n_;
    std::vector<int> bitrev_;
    std::vector<std::complex<double>> twiddle_;  // e^{-2 pi i j / n}, j < n/2
};

}  // namespace repulse
