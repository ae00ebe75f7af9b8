// SPDX-License-Identifier: Apache-2.0
#include "sawline/gating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sawline/constants.hpp"

namespace sawline {

namespace {

// log-parabolic sub-bin refinement around index i; returns (offset, value)
std::pair<double, double> refine_log_parabola(double y0, double y1, double y2) {
    if (!(y0 > 0.0) || !(y1 > 0.0) || !(y2 > 0.0)) return {0.0, y1};
    const double l0 = std::log(y0), l1 = std::log(y1), l2 = std::log(y2);
    const double denom = l0 - 2.0 * l1 + l2;
    if (!(denom < 0.0)) return {0.0, y1};
    const double delta = 0.5 * (l0 - l2) / denom;
    if (std::abs(delta) > 0.5) return {0.0, y1};
    const double lpk = l1 - 0.25 * (l0 - l2) * delta;
    return {delta, std::exp(lpk)};
}

std::vector<cplx> padded_time(const FrequencySweep& sweep, int pad_factor,
                              const std::vector<double>& win) {
    const std::size_t n = sweep.size();
    std::vector<cplx> buf(n * static_cast<std::size_t>(pad_factor), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) buf[k] = sweep.points[k] * win[k];
    fft_inverse(buf);  // unnormalized: sum_k X_k e^{+2pi i jk/Np}
    return buf;
}

}  // namespace

void GateWindow::validate() const {
    if (!(t_lo < t_hi)) throw std::invalid_argument("GateWindow: t_lo must be < t_hi");
    if (taper_fraction < 0.0 || taper_fraction > 0.5)
        throw std::invalid_argument("GateWindow: taper_fraction must lie in [0, 0.5]");
}

double FitResult::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw std::invalid_argument("FitResult: no parameter named " + name);
}

TimeTrace to_time_domain(const FrequencySweep& sweep, int pad_factor,
                         const SpectralWindow& window) {
    sweep.validate();
    if (pad_factor < 1) throw std::invalid_argument("to_time_domain: pad_factor must be >= 1");
    if (sweep.points.empty()) throw std::invalid_argument("to_time_domain: empty sweep");

    const std::size_t n = sweep.size();
    const std::vector<double> win = make_window(window, n);
    std::vector<cplx> buf = padded_time(sweep, pad_factor, win);

    TimeTrace trace;
    trace.t_start = 0.0;
    trace.t_step = 1.0 / (static_cast<double>(buf.size()) * sweep.f_step);
    trace.source_meta = sweep.meta;
    trace.points.resize(buf.size());
    for (std::size_t j = 0; j < buf.size(); ++j) trace.points[j] = buf[j] * sweep.f_step;
    return trace;
}

std::vector<Peak> detect_peaks(const TimeTrace& trace, double threshold_db,
                               double min_separation) {
    if (!(threshold_db < 0.0))
        throw std::invalid_argument("detect_peaks: threshold_db must be < 0 (relative to max)");
    const std::size_t n = trace.size();
    if (n < 3) return {};
    if (min_separation <= 0.0) min_separation = 5.0 * trace.t_step;

    double gmax = 0.0;
    std::vector<double> mag(n);
    for (std::size_t j = 0; j < n; ++j) {
        mag[j] = std::abs(trace.points[j]);
        gmax = std::max(gmax, mag[j]);
    }
    if (gmax <= 0.0) return {};
    const double thr = gmax * from_db(threshold_db);

    std::vector<std::size_t> cands;
    for (std::size_t j = 1; j + 1 < n; ++j)
        if (mag[j] > thr && mag[j] > mag[j - 1] && mag[j] > mag[j + 1]) cands.push_back(j);

    std::sort(cands.begin(), cands.end(),
              [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });

    const double span = trace.span();
    auto circ_dist = [span](double a, double b) {
        double d = std::abs(a - b);
        return std::min(d, span - d);
    };

    std::vector<std::size_t> kept;
    for (std::size_t j : cands) {
        const double tj = trace.time(j);
        bool clear = true;
        for (std::size_t k : kept)
            if (circ_dist(tj, trace.time(k)) < min_separation) {
                clear = false;
                break;
            }
        if (clear) kept.push_back(j);
    }
    std::sort(kept.begin(), kept.end());

    std::vector<Peak> peaks;
    peaks.reserve(kept.size());
    for (std::size_t j : kept) {
        auto [delta, value] = refine_log_parabola(mag[j - 1], mag[j], mag[j + 1]);
        peaks.push_back({trace.time(j) + delta * trace.t_step, value});
    }
    return peaks;
}

std::optional<PathArrivals> identify_paths(const std::vector<Peak>& peaks) {
    if (peaks.size() < 2) return std::nullopt;
    PathArrivals out;
    out.crosstalk = peaks.front();  // peaks are time-sorted
    out.acoustic = peaks[1];
    for (std::size_t i = 2; i < peaks.size(); ++i)
        if (peaks[i].amplitude > out.acoustic.amplitude) out.acoustic = peaks[i];
    return out;
}

FrequencySweep apply_gate(const FrequencySweep& sweep, const GateWindow& window, int pad_factor,
                          const SpectralWindow& spectral) {
    sweep.validate();
    window.validate();
    if (pad_factor < 1) throw std::invalid_argument("apply_gate: pad_factor must be >= 1");
    if (sweep.points.empty()) throw std::invalid_argument("apply_gate: empty sweep");

    const double alias_span = 1.0 / sweep.f_step;
    if (window.t_lo < 0.0 || window.t_hi > alias_span)
        throw std::invalid_argument(
            "apply_gate: gate window outside the alias-free range [0, 1/f_step)");

    const std::size_t n = sweep.size();
    const std::vector<double> win = make_window(spectral, n);
    for (double w : win)
        if (!(w > 0.0))
            throw std::invalid_argument(
                "apply_gate: spectral window must be nonzero everywhere to be invertible "
                "(hann is not; use kaiser or hamming)");
    std::vector<cplx> buf = padded_time(sweep, pad_factor, win);

    const double t_step = 1.0 / (static_cast<double>(buf.size()) * sweep.f_step);
    const double taper = window.taper_fraction * (window.t_hi - window.t_lo);
    for (std::size_t j = 0; j < buf.size(); ++j) {
        const double t = t_step * static_cast<double>(j);
        double g = 0.0;
        if (t >= window.t_lo && t <= window.t_hi) {
            g = 1.0;
            if (taper > 0.0) {
                if (t < window.t_lo + taper)
                    g = 0.5 - 0.5 * std::cos(constants::pi * (t - window.t_lo) / taper);
                else if (t > window.t_hi - taper)
                    g = 0.5 - 0.5 * std::cos(constants::pi * (window.t_hi - t) / taper);
            }
        }
        buf[j] *= g;
    }

    fft_forward(buf);
    FrequencySweep out = sweep;
    const double scale = 1.0 / static_cast<double>(buf.size());
    for (std::size_t k = 0; k < n; ++k) out.points[k] = buf[k] * scale / win[k];
    return out;
}

ResonanceEstimate resonance_metrics(const FrequencySweep& gated, double edge_guard_fraction,
                                    std::optional<std::pair<double, double>> search_band) {
    gated.validate();
    const std::size_t n = gated.size();
    if (n < 3) throw std::invalid_argument("resonance_metrics: sweep too short");
    if (edge_guard_fraction < 0.0 || edge_guard_fraction >= 0.5)
        throw std::invalid_argument("resonance_metrics: edge_guard_fraction must lie in [0, 0.5)");

    std::size_t lo = static_cast<std::size_t>(edge_guard_fraction * static_cast<double>(n));
    std::size_t hi = n - lo;  // exclusive
    if (search_band) {
        const auto [f_lo, f_hi] = *search_band;
        if (!(f_lo < f_hi)) throw std::invalid_argument("resonance_metrics: bad search band");
        while (lo < hi && gated.freq(lo) < f_lo) ++lo;
        while (hi > lo && gated.freq(hi - 1) > f_hi) --hi;
    }
    if (hi - lo < 1) throw std::invalid_argument("resonance_metrics: empty search range");

    std::size_t imax = lo;
    double best = -1.0;
    bool ambiguous = false;
    for (std::size_t k = lo; k < hi; ++k) {
        const double m = std::abs(gated.points[k]);
        if (m > best) {
            best = m;
            imax = k;
            ambiguous = false;
        } else if (m == best && k != imax) {
            ambiguous = true;  // equal maxima: keep the lowest frequency
        }
    }

    ResonanceEstimate est;
    est.ambiguous = ambiguous;
    if (imax > 0 && imax + 1 < n) {
        auto [delta, value] = refine_log_parabola(std::abs(gated.points[imax - 1]), best,
                                                  std::abs(gated.points[imax + 1]));
        est.f0_est = gated.freq(imax) + delta * gated.f_step;
        est.s21_res = value;
    } else {
        est.f0_est = gated.freq(imax);
        est.s21_res = best;
    }
    return est;
}

FitResult fit_velocity(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("fit_velocity: need at least one (d, dt) pair");
    double sdt = 0.0, sdt2 = 0.0;
    for (const auto& [d, dt] : pairs) {
        sdt += d * dt;
        sdt2 += dt * dt;
    }
    if (!(sdt2 > 0.0)) throw std::invalid_argument("fit_velocity: all delays are zero");
    const double v = sdt / sdt2;

    double ss = 0.0;
    for (const auto& [d, dt] : pairs) {
        const double r = d - v * dt;
        ss += r * r;
    }
    const std::size_t m = pairs.size();
    const double sigma2 = m > 1 ? ss / static_cast<double>(m - 1) : 0.0;

    FitResult fit;
    fit.params = {{"v", v}};
    fit.covariance = {{sigma2 / sdt2}};
    fit.residual_rms = std::sqrt(ss / static_cast<double>(m));
    return fit;
}

FitResult fit_decay(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_decay: need at least two points");
    for (const auto& [d, s] : points)
        if (!(s > 0.0)) throw std::invalid_argument("fit_decay: amplitudes must be > 0");

    // ln s = a + b d with a = ln A, b = -1/(2l)
    const double m = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [d, s] : points) {
        const double y = std::log(s);
        sx += d;
        sy += y;
        sxx += d * d;
        sxy += d * y;
    }
    const double det = m * sxx - sx * sx;
    if (!(det > 0.0)) throw std::invalid_argument("fit_decay: distances must not be all equal");
    const double b = (m * sxy - sx * sy) / det;
    const double a = (sy - b * sx) / m;

    double ss = 0.0;
    for (const auto& [d, s] : points) {
        const double r = std::log(s) - (a + b * d);
        ss += r * r;
    }
    const double dof = m > 2 ? m - 2.0 : 1.0;
    const double sigma2 = ss / dof;
    // covariance of (a, b) from the normal equations
    const double cov_aa = sigma2 * sxx / det;
    const double cov_ab = -sigma2 * sx / det;
    const double cov_bb = sigma2 * m / det;

    const double amp = std::exp(a);
    const double slope_sigma = std::sqrt(cov_bb);
    const bool lossless = !(b < 0.0) || std::abs(b) < 2.0 * slope_sigma;
    const double l = b < 0.0 ? -1.0 / (2.0 * b) : std::numeric_limits<double>::infinity();

    // propagate to (A, l): dA/da = A, dl/db = 1/(2 b^2)
    const double dl_db = b != 0.0 ? 1.0 / (2.0 * b * b) : 0.0;
    FitResult fit;
    fit.params = {{"A", amp}, {"l", l}};
    fit.covariance = {{cov_aa * amp * amp, cov_ab * amp * dl_db},
                      {cov_ab * amp * dl_db, cov_bb * dl_db * dl_db}};
    fit.residual_rms = std::sqrt(ss / m);
    fit.lossless_regime = lossless;
    return fit;
}

double compare_resonance(const FrequencySweep& a, const FrequencySweep& b) {
    const ResonanceEstimate ra = resonance_metrics(a);
    const ResonanceEstimate rb = resonance_metrics(b);
    if (!(rb.s21_res > 0.0))
        throw std::invalid_argument("compare_resonance: reference resonance amplitude is zero");
    return ra.s21_res / rb.s21_res;
}

}  // namespace sawline
