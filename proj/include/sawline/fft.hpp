// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace sawline {

using cplx = std::complex<double>;

// In-place complex DFT of arbitrary length. forward computes
// X_k = sum_j x_j e^{-2pi i jk/n}; inverse computes the conjugate kernel
// without the 1/n factor, so inverse(forward(x)) == n*x.
// Power-of-two lengths use an iterative radix-2 kernel, everything else
// goes through Bluestein's chirp-z reduction to a power of two.
void fft(std::vector<cplx>& data, bool inverse);

inline void fft_forward(std::vector<cplx>& data) { fft(data, false); }
inline void fft_inverse(std::vector<cplx>& data) { fft(data, true); }

std::size_t next_pow2(std::size_t n);

// Symmetric analysis windows over n samples (endpoints included).
enum class WindowKind { none, hann, hamming, kaiser };

struct SpectralWindow {
    WindowKind kind = WindowKind::none;
    double kaiser_beta = 0.0;

    static SpectralWindow none() { return {WindowKind::none, 0.0}; }
    static SpectralWindow hann() { return {WindowKind::hann, 0.0}; }
    static SpectralWindow hamming() { return {WindowKind::hamming, 0.0}; }
    static SpectralWindow kaiser(double beta) { return {WindowKind::kaiser, beta}; }
};

std::vector<double> make_window(const SpectralWindow& w, std::size_t n);

}  // namespace sawline
