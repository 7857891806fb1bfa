#include "rmc/fft.hpp"

#include <cmath>

#include "rmc/errors.hpp"

namespace rmc {

namespace {

// Roots e^{+2pi i k/N} for k < N/2, each from std::polar so the table is
// accurate to an ulp at every index.
std::vector<cdouble> root_table(std::size_t n) {
    std::vector<cdouble> roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        roots[k] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) /
                                       static_cast<double>(n));
    return roots;
}

}  // namespace

void fft_inplace(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw domain_error("fft_inplace: size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const std::vector<cdouble> roots = root_table(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cdouble w = roots[k * step];
                if (!inverse) w = std::conj(w);
                const cdouble u = a[i + k];
                const cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cdouble> convolve_truncated(const std::vector<cdouble>& a,
                                        const std::vector<cdouble>& b,
                                        std::size_t need) {
    if (a.empty() || b.empty() || need == 0) return {};
    const std::size_t full = a.size() + b.size() - 1;
    need = std::min(need, full);
    const std::size_t n = next_pow2(full);

    std::vector<cdouble> fa(n), fb(n);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    const double inv = 1.0 / static_cast<double>(n);
    std::vector<cdouble> out(need);
    for (std::size_t i = 0; i < need; ++i) out[i] = fa[i] * inv;
    return out;
}

}  // namespace rmc
