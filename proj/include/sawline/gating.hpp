// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sawline/delayline.hpp"
#include "sawline/fft.hpp"

namespace sawline {

// Complex impulse-response samples on a uniform time grid starting at 0.
// t_step = 1/(n_padded * f_step) of the sweep it came from.
struct TimeTrace {
    double t_start = 0.0;
    double t_step = 0.0;
    std::vector<cplx> points;
    SweepMeta source_meta;

    std::size_t size() const { return points.size(); }
    double time(std::size_t j) const { return t_start + t_step * static_cast<double>(j); }
    // alias-free span of the originating sweep
    double span() const { return t_step * static_cast<double>(points.size()); }
};

struct GateWindow {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double taper_fraction = 0.0;  // 0 = hard rectangle, up to 0.5 cosine edges

    void validate() const;
    // paper-following default: [t_s - 25 ns, t_s + 75 ns], rectangular
    static GateWindow around_arrival(double t_s) { return {t_s - 25e-9, t_s + 75e-9, 0.0}; }
};

struct Peak {
    double time = 0.0;
    double amplitude = 0.0;
};

struct ResonanceEstimate {
    double f0_est = 0.0;
    double s21_res = 0.0;
    bool ambiguous = false;  // multiple equal maxima; lowest frequency reported
};

struct FitResult {
    std::vector<std::pair<std::string, double>> params;  // named values, SI units
    std::vector<std::vector<double>> covariance;         // same ordering
    double residual_rms = 0.0;
    bool lossless_regime = false;  // decay slope indistinguishable from zero

    double param(const std::string& name) const;
};

// Frequency -> time. Plain inverse DFT of the zero-padded sweep, physicist
// normalization h_j = f_step * sum_k S_k e^{+2pi i jk/Npad}, which makes
// sum|h|^2 dt == sum|S|^2 df exactly (window == none). A non-trivial window
// tapers the sweep before transforming; peak detection uses that to keep
// kernel skirts of strong early arrivals from burying late weak ones.
TimeTrace to_time_domain(const FrequencySweep& sweep, int pad_factor,
                         const SpectralWindow& window = SpectralWindow::none());

// Strict local maxima of |trace| above threshold_db relative to the global
// maximum, merged so no two reported peaks lie within min_separation of each
// other (circular time distance; strongest wins). Times are refined by
// 3-point log-parabolic interpolation. min_separation <= 0 selects the
// default refractory interval of 5 * t_step.
std::vector<Peak> detect_peaks(const TimeTrace& trace, double threshold_db,
                               double min_separation = 0.0);

// Pairing rule: earliest reported peak is the electrical crosstalk arrival,
// the largest later peak the acoustic arrival.
struct PathArrivals {
    Peak crosstalk;
    Peak acoustic;
};
std::optional<PathArrivals> identify_paths(const std::vector<Peak>& peaks);

// Time gating: window -> padded inverse DFT -> gate mask -> forward DFT ->
// de-window -> original grid. Exact identity when the gate covers the whole
// span; idempotent for taper 0. The default Kaiser(13) taper keeps kernel
// skirts of out-of-gate arrivals from leaking into the gate: without it the
// band-limited 1/t skirt of a strong crosstalk peak sits well above a weak
// acoustic resonance. Band edges of a gated sweep are unreliable (the
// de-windowing amplifies whatever leaked there); resonance_metrics masks
// them via its edge guard.
FrequencySweep apply_gate(const FrequencySweep& sweep, const GateWindow& window, int pad_factor,
                          const SpectralWindow& spectral = SpectralWindow::kaiser(13.0));

// Resonance search over the interior of the grid (edge_guard_fraction of the
// bins masked at each end), optionally restricted to [f_lo, f_hi]. Sub-bin
// refinement with a 3-point log-parabolic fit.
ResonanceEstimate resonance_metrics(const FrequencySweep& gated,
                                    double edge_guard_fraction = 0.05,
                                    std::optional<std::pair<double, double>> search_band = {});

// Least squares through the origin: v = sum(d dt)/sum(dt^2).
FitResult fit_velocity(const std::vector<std::pair<double, double>>& distance_delay_pairs);

// Linear least squares of ln|S21,0| against d for |S21,0| = A e^{-d/2l}.
FitResult fit_decay(const std::vector<std::pair<double, double>>& distance_amplitude_points);

// Ratio of resonance transmission amplitudes of two gated sweeps.
double compare_resonance(const FrequencySweep& a, const FrequencySweep& b);

}  // namespace sawline
