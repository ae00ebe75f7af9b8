// SPDX-License-Identifier: Apache-2.0
#include "sawline/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "sawline/constants.hpp"

namespace sawline {

namespace {

void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * constants::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
}

void fft_bluestein(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    const std::size_t m = next_pow2(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;

    // chirp: c_j = e^{sign * i pi j^2 / n}; j^2 mod 2n keeps the argument small
    std::vector<cplx> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t j2 = (j * j) % (2 * n);
        const double ang = sign * constants::pi * static_cast<double>(j2) / static_cast<double>(n);
        chirp[j] = cplx(std::cos(ang), std::sin(ang));
    }

    std::vector<cplx> p(m, cplx(0.0, 0.0)), q(m, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) p[j] = a[j] * std::conj(chirp[j]);
    q[0] = chirp[0];
    for (std::size_t j = 1; j < n; ++j) q[j] = q[m - j] = chirp[j];

    fft_pow2(p, false);
    fft_pow2(q, false);
    for (std::size_t j = 0; j < m; ++j) p[j] *= q[j];
    fft_pow2(p, true);

    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = p[j] * std::conj(chirp[j]) * scale;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft(std::vector<cplx>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0) return;
    if ((n & (n - 1)) == 0)
        fft_pow2(data, inverse);
    else
        fft_bluestein(data, inverse);
}

std::vector<double> make_window(const SpectralWindow& w, std::size_t n) {
    std::vector<double> out(n, 1.0);
    if (n < 2 || w.kind == WindowKind::none) return out;
    const double nm1 = static_cast<double>(n - 1);
    switch (w.kind) {
        case WindowKind::none:
            break;
        case WindowKind::hann:
            for (std::size_t k = 0; k < n; ++k)
                out[k] = 0.5 - 0.5 * std::cos(2.0 * constants::pi * k / nm1);
            break;
        case WindowKind::hamming:
            for (std::size_t k = 0; k < n; ++k)
                out[k] = 0.54 - 0.46 * std::cos(2.0 * constants::pi * k / nm1);
            break;
        case WindowKind::kaiser: {
            if (w.kaiser_beta < 0.0) throw std::invalid_argument("kaiser beta must be >= 0");
            const double denom = std::cyl_bessel_i(0.0, w.kaiser_beta);
            for (std::size_t k = 0; k < n; ++k) {
                const double r = 2.0 * k / nm1 - 1.0;
                out[k] = std::cyl_bessel_i(0.0, w.kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
            }
            break;
        }
    }
    return out;
}

}  // namespace sawline
