#include "repulse/fft.hpp"

#include <cmath>

namespace repulse {

Fft::Fft(int n) : n_(n) {
    if (n_ < 2 || (n_ & (n_ - 1)) != 0) throw argument_error("Fft: size must be a power of two >= 2");
    bitrev_.resize(n_);
    int log2n = 0;
    while ((1 << log2n) < n_) ++log2n;
    for (int i = 0; i < n_; ++i) {
        int rev = 0;
        for (int b = 0; b < log2n; ++b)
            if (i & (1 << b)) rev |= 1 << (log2n - 1 - b);
        bitrev_[i] = rev;
    }
    twiddle_.resize(n_ / 2);
    for (int j = 0; j < n_ / 2; ++j) {
        const double ang = -2.0 * M_PI * j / n_;
        twiddle_[j] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft::transform(std::complex<double>* a, bool invert) const {
    for (int i = 0; i < n_; ++i)
        if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);

    for (int len = 2; len <= n_; len <<= 1) {
        const int stride = n_ / len;
        const int half = len >> 1;
        for (int start = 0; start < n_; start += len) {
            for (int k = 0; k < half; ++k) {
                std::complex<double> w = twiddle_[static_cast<std::size_t>(k) * stride];
                if (invert) w = std::conj(w);
                const std::complex<double> even = a[start + k];
                const std::complex<double> odd = a[start + k + half] * w;
                a[start + k] = even + odd;
                a[start + k + half] = even - odd;
            }
        }
    }
    if (invert) {
        const double scale = 1.0 / n_;
        for (int i = 0; i < n_; ++i) a[i] *= scale;
    }
}

void Fft::forward(std::complex<double>* data) const { transform(data, false); }
void Fft::inverse(std::complex<double>* data) const { transform(data, true); }

}  // namespace repulse
