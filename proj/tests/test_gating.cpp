// SPDX-License-Identifier: Apache-2.0
#include "sawline/gating.hpp"

#include <stdexcept>

#include <cmath>
#include <random>

#include "doctest.h"
#include "sawline/constants.hpp"
#include "sawline/idt.hpp"

using namespace sawline;

namespace {

DelayLineScenario cryo_scenario() {
    DelayLineScenario s;
    s.decay_length_l = 1e9;
    return s;
}

FrequencySweep paper_sweep() {
    const DelayLineScenario s = cryo_scenario();
    return synth_sweep(s, FrequencyGrid::around(s.idt.f0));
}

double sweep_energy(const FrequencySweep& s) {
    double e = 0.0;
    for (const cplx& p : s.points) e += std::norm(p);
    return e * s.f_step;
}

double trace_energy(const TimeTrace& t) {
    double e = 0.0;
    for (const cplx& p : t.points) e += std::norm(p);
    return e * t.t_step;
}

}  // namespace

TEST_CASE("to_time_domain: shift theorem puts a single delay at tau") {
    FrequencySweep s;
    s.f_start = 4.0e9;
    s.f_step = 1e6;
    const double tau = 37.25e-9;
    s.points.resize(1201);
    for (std::size_t k = 0; k < s.size(); ++k)
        s.points[k] = std::polar(1.0, -2.0 * constants::pi * s.freq(k) * tau);
    const TimeTrace tr = to_time_domain(s, 8);
    std::size_t imax = 0;
    for (std::size_t j = 1; j < tr.size(); ++j)
        if (std::abs(tr.points[j]) > std::abs(tr.points[imax])) imax = j;
    CHECK(tr.time(imax) == doctest::Approx(tau).epsilon(0.5 * tr.t_step / tau));
}

TEST_CASE("to_time_domain: all-zero sweep, zero trace; Parseval energy identity") {
    FrequencySweep z;
    z.f_start = 1e9;
    z.f_step = 1e6;
    z.points.assign(256, cplx(0.0, 0.0));
    const TimeTrace tz = to_time_domain(z, 4);
    for (const cplx& p : tz.points) CHECK(std::abs(p) == 0.0);

    const FrequencySweep s = paper_sweep();
    for (int pad : {1, 8}) {
        const TimeTrace tr = to_time_domain(s, pad);
        CHECK(tr.t_step == doctest::Approx(1.0 / (static_cast<double>(tr.size()) * s.f_step)));
        CHECK(trace_energy(tr) == doctest::Approx(sweep_energy(s)).epsilon(1e-9));
    }

    FrequencySweep bad = z;
    bad.f_step = 0.0;
    CHECK_THROWS_AS(to_time_domain(bad, 1), std::invalid_argument);
    CHECK_THROWS_AS(to_time_domain(s, 0), std::invalid_argument);
}

TEST_CASE("detect_peaks: crosstalk-only trace has exactly one peak at t_c") {
    DelayLineScenario s = cryo_scenario();
    s.k2 = 0.0;
    const FrequencySweep sweep = synth_sweep(s, FrequencyGrid::around(s.idt.f0));
    const TimeTrace tr = to_time_domain(sweep, 8);
    // default refractory, plain transform: kernel sidelobes sit at -13 dB,
    // so a -10 dB threshold leaves only the main peak
    const auto peaks = detect_peaks(tr, -10.0);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].time == doctest::Approx(2.5e-9).epsilon(0.02));
}

TEST_CASE("detect_peaks: full scenario gives the two arrivals, dt = d/v within a bin") {
    const DelayLineScenario s = cryo_scenario();
    const FrequencySweep sweep = paper_sweep();
    // tapered transform so the crosstalk kernel skirt stays below the weak
    // acoustic pulse
    const TimeTrace tr = to_time_domain(sweep, 8, SpectralWindow::hann());
    const auto peaks = detect_peaks(tr, -75.0, 15e-9);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].time == doctest::Approx(2.5e-9).epsilon(0.02));
    CHECK(peaks[1].time == doctest::Approx(263.8075e-9).epsilon(1e-3));
    const double dt = peaks[1].time - peaks[0].time;
    CHECK(std::abs(dt - s.distance_d / s.v_saw) <= tr.t_step);

    const auto arrivals = identify_paths(peaks);
    REQUIRE(arrivals.has_value());
    CHECK(arrivals->crosstalk.time == peaks[0].time);
    CHECK(arrivals->acoustic.time == peaks[1].time);
}

TEST_CASE("detect_peaks: featureless flat trace yields nothing") {
    TimeTrace tr;
    tr.t_step = 1e-10;
    tr.points.assign(4096, cplx(3e-6, 0.0));
    CHECK(detect_peaks(tr, -1.0).empty());
}

TEST_CASE("apply_gate: full-range gate is the identity") {
    const FrequencySweep s = paper_sweep();
    const double alias = 1.0 / s.f_step;
    const GateWindow full{0.0, alias * 0.999999, 0.0};
    for (const SpectralWindow& w :
         {SpectralWindow::none(), SpectralWindow::kaiser(13.0), SpectralWindow::hamming()}) {
        const FrequencySweep g = apply_gate(s, full, 8, w);
        double worst = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k)
            worst = std::max(worst, std::abs(g.points[k] - s.points[k]) / std::abs(s.points[k]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("apply_gate: idempotent for a hard rectangle") {
    const FrequencySweep s = paper_sweep();
    const GateWindow w = GateWindow::around_arrival(263.8075e-9);
    const FrequencySweep once = apply_gate(s, w, 8);
    const FrequencySweep twice = apply_gate(once, w, 8);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        num += std::norm(twice.points[k] - once.points[k]);
        den += std::norm(once.points[k]);
    }
    CHECK(std::sqrt(num / den) < 1e-6);
}

TEST_CASE("apply_gate: projection property, energy never grows (rect window)") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> du(0.4e-3, 2.5e-3);
    std::uniform_real_distribution<double> logk2(-8.0, -5.0);
    for (int i = 0; i < 10; ++i) {
        DelayLineScenario s = cryo_scenario();
        s.distance_d = du(rng);
        s.k2 = std::pow(10.0, logk2(rng));
        const FrequencySweep sweep = synth_sweep(s, FrequencyGrid::around(s.idt.f0));
        const GateWindow w = GateWindow::around_arrival(s.t_saw());
        const FrequencySweep g = apply_gate(sweep, w, 8, SpectralWindow::none());
        CHECK(sweep_energy(g) <= sweep_energy(sweep) * (1.0 + 1e-12));
    }
}

TEST_CASE("apply_gate: gating an empty region leaves only a deep numeric floor") {
    DelayLineScenario s = cryo_scenario();
    s.k2 = 0.0;  // crosstalk only at -55 dB
    const FrequencySweep sweep = synth_sweep(s, FrequencyGrid::around(s.idt.f0));
    const GateWindow w = GateWindow::around_arrival(263.8075e-9);
    const FrequencySweep g = apply_gate(sweep, w, 8);  // default kaiser(13)
    // interior of the band: below -140 dB; the outermost bins carry the
    // de-windowed leakage and are excluded by the resonance edge guard
    const std::size_t guard = g.size() / 10;
    double interior = 0.0, edges = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double m = std::abs(g.points[k]);
        if (k >= guard && k < g.size() - guard)
            interior = std::max(interior, m);
        else
            edges = std::max(edges, m);
    }
    CHECK(to_db(interior) < -140.0);
    CHECK(to_db(edges) < -70.0);
}

TEST_CASE("apply_gate: crosstalk suppressed, resonance preserved on the reference device") {
    const DelayLineScenario s = cryo_scenario();
    const FrequencySweep sweep = paper_sweep();
    const FrequencySweep g = apply_gate(sweep, GateWindow::around_arrival(s.t_saw()), 8);

    const ResonanceEstimate res = resonance_metrics(g);
    const double theory = s21_resonance(s.idt, ga_at_resonance(s.idt, s.k2), 1.0);
    CHECK(res.f0_est == doctest::Approx(4.583e9).epsilon(1e-5));
    CHECK(res.s21_res == doctest::Approx(theory).epsilon(0.01));
    CHECK(std::abs(to_db(res.s21_res) - to_db(theory)) < 0.05);

    // off-resonance background drops by more than 40 dB
    const std::size_t guard = g.size() / 10;
    for (std::size_t k = guard; k < g.size() - guard; k += 53) {
        if (std::abs(g.freq(k) - s.idt.f0) < 0.2e9) continue;
        const double before = to_db(std::abs(sweep.points[k]));
        const double after = to_db(std::abs(g.points[k]));
        CHECK(before - after > 40.0);
    }
}

TEST_CASE("apply_gate: input validation") {
    const FrequencySweep s = paper_sweep();
    CHECK_THROWS_AS(apply_gate(s, GateWindow{2e-9, 1e-9, 0.0}, 8), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, GateWindow{0.0, 1e-3, 0.0}, 8), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, GateWindow{0.0, 1e-7, 0.7}, 8), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, GateWindow{0.0, 1e-7, 0.0}, 8, SpectralWindow::hann()),
                    std::invalid_argument);
}

TEST_CASE("time-domain support: energy is confined near the arrivals (circular)") {
    const DelayLineScenario s = cryo_scenario();
    const TimeTrace tr = to_time_domain(paper_sweep(), 8);
    const double span = tr.span();
    const double lo = span - 50e-9;  // negative-time skirt wraps to the end
    const double hi = s.t_saw() + 50e-9;
    double inside = 0.0, total = 0.0;
    for (std::size_t j = 0; j < tr.size(); ++j) {
        const double e = std::norm(tr.points[j]);
        total += e;
        const double t = tr.time(j);
        if (t <= hi || t >= lo) inside += e;
    }
    CHECK(inside / total > 0.99);
}

TEST_CASE("resonance_metrics: symmetric spectrum lands exactly on f0; ambiguity flag") {
    FrequencySweep s;
    s.f_start = 4.0e9;
    s.f_step = 1e6;
    s.points.resize(1001);
    const double f0 = 4.5e9;  // bin 500, exact center
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double x = 50.0 * constants::pi * (s.freq(k) - f0) / f0;
        const double v = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
        s.points[k] = v * v;
    }
    const ResonanceEstimate r = resonance_metrics(s, 0.0);
    CHECK(r.f0_est == doctest::Approx(f0).epsilon(1e-12));
    CHECK_FALSE(r.ambiguous);

    FrequencySweep twin = s;
    twin.points.assign(101, cplx(0.0, 0.0));
    twin.points[30] = 1.0;
    twin.points[70] = 1.0;
    const ResonanceEstimate rt = resonance_metrics(twin, 0.0);
    CHECK(rt.ambiguous);
    CHECK(rt.f0_est == doctest::Approx(twin.freq(30)));
}

TEST_CASE("fit_velocity") {
    const double v = 5063.0;
    std::vector<std::pair<double, double>> pairs;
    for (double d : {323e-6, 823e-6, 1323e-6, 1823e-6}) pairs.emplace_back(d, d / v);
    FitResult fit = fit_velocity(pairs);
    CHECK(fit.param("v") == doctest::Approx(v).epsilon(1e-9));

    // invariant under reordering
    std::swap(pairs[0], pairs[3]);
    std::swap(pairs[1], pairs[2]);
    CHECK(fit_velocity(pairs).param("v") == doctest::Approx(fit.param("v")).epsilon(1e-15));

    // a single pair determines v exactly
    CHECK(fit_velocity({{1e-3, 1e-3 / 5065.0}}).param("v") == doctest::Approx(5065.0));

    CHECK_THROWS_AS(fit_velocity({}), std::invalid_argument);
    CHECK_THROWS_AS(fit_velocity({{1e-3, 0.0}, {2e-3, 0.0}}), std::invalid_argument);
}

TEST_CASE("fit_decay") {
    const double A = 1.96e-6, l = 0.6e-3;
    std::vector<std::pair<double, double>> pts;
    for (double d : {0.2e-3, 0.5e-3, 0.9e-3, 1.4e-3, 2.0e-3})
        pts.emplace_back(d, A * std::exp(-d / (2.0 * l)));
    FitResult fit = fit_decay(pts);
    CHECK(fit.param("A") == doctest::Approx(A).epsilon(1e-10));
    CHECK(fit.param("l") == doctest::Approx(l).epsilon(1e-10));
    CHECK_FALSE(fit.lossless_regime);

    std::swap(pts[0], pts[4]);
    FitResult refit = fit_decay(pts);
    CHECK(refit.param("l") == doctest::Approx(fit.param("l")).epsilon(1e-12));

    // constant amplitudes: slope 0, infinite decay length, flagged
    FitResult flat = fit_decay({{0.2e-3, 5e-6}, {0.8e-3, 5e-6}, {1.5e-3, 5e-6}});
    CHECK(std::isinf(flat.param("l")));
    CHECK(flat.param("A") == doctest::Approx(5e-6));
    CHECK(flat.lossless_regime);

    CHECK_THROWS_AS(fit_decay({{1e-3, 1e-6}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay({{1e-3, 0.0}, {2e-3, 1e-6}}), std::invalid_argument);
}

TEST_CASE("compare_resonance") {
    const FrequencySweep s = paper_sweep();
    const DelayLineScenario sc = cryo_scenario();
    const FrequencySweep g = apply_gate(s, GateWindow::around_arrival(sc.t_saw()), 8);
    CHECK(compare_resonance(g, g) == doctest::Approx(1.0));

    // 6 dB amplitude ratio: ratio in dB equals dB(a) - dB(b)
    FrequencySweep half = g;
    const double scale = from_db(-6.0);
    for (cplx& p : half.points) p *= scale;
    const double ratio = compare_resonance(g, half);
    CHECK(to_db(ratio) == doctest::Approx(6.0).epsilon(1e-9));
    // amplitude ratio 2 <-> sqrt(2) change in the piezoelectric coefficient
    CHECK(std::sqrt(ratio) == doctest::Approx(1.41).epsilon(0.01));

    FrequencySweep zero = g;
    for (cplx& p : zero.points) p = 0.0;
    CHECK_THROWS_AS(compare_resonance(g, zero), std::invalid_argument);
}

TEST_CASE("noise-free pipeline round trip: injected K2 recovered within 5%") {
    DelayLineScenario s = cryo_scenario();
    s.k2 = 8.5e-7;
    const FrequencySweep sweep = synth_sweep(s, FrequencyGrid::around(s.idt.f0));

    const TimeTrace tr = to_time_domain(sweep, 8, SpectralWindow::hann());
    const auto arrivals = identify_paths(detect_peaks(tr, -75.0, 15e-9));
    REQUIRE(arrivals.has_value());
    const FrequencySweep g =
        apply_gate(sweep, GateWindow::around_arrival(arrivals->acoustic.time), 8);
    const ResonanceEstimate res = resonance_metrics(g);
    const double k2 = extract_k2(s.idt, res.s21_res, 1.0);
    CHECK(k2 == doctest::Approx(s.k2).epsilon(0.05));
}

TEST_CASE("noisy detection: -110 dB floor over a -99 dB resonance still resolves") {
    DelayLineScenario s = cryo_scenario();
    const FrequencySweep noisy =
        add_noise(synth_sweep(s, FrequencyGrid::around(s.idt.f0)), -110.0, 2024);
    const TimeTrace tr = to_time_domain(noisy, 8, SpectralWindow::hann());
    const auto arrivals = identify_paths(detect_peaks(tr, -70.0, 15e-9));
    REQUIRE(arrivals.has_value());
    CHECK(arrivals->acoustic.time == doctest::Approx(s.t_saw()).epsilon(0.02));
    const FrequencySweep g =
        apply_gate(noisy, GateWindow::around_arrival(arrivals->acoustic.time), 8);
    const ResonanceEstimate res = resonance_metrics(g);
    const double theory = s21_resonance(s.idt, ga_at_resonance(s.idt, s.k2), 1.0);
    CHECK(res.s21_res == doctest::Approx(theory).epsilon(0.5));
    CHECK(res.s21_res / from_db(-110.0) > from_db(11.0));  // clears the raw floor
}
