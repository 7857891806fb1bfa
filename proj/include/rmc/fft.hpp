#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rmc {

using cdouble = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT; a.size() must be a power of two.
// forward: sum_k a[k] e^{-2pi i km/N}; inverse: sum_k a[k] e^{+2pi i km/N}
// (the inverse variant is unscaled; divide by N yourself if needed).
void fft_inplace(std::vector<cdouble>& a, bool inverse);

// Linear convolution of a and b truncated to `need` output coefficients.
std::vector<cdouble> convolve_truncated(const std::vector<cdouble>& a,
                                        const std::vector<cdouble>& b,
                                        std::size_t need);

}  // namespace rmc
