// SPDX-License-Identifier: Apache-2.0
#include "sawline/delayline.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sawline/constants.hpp"

namespace sawline {

void FrequencySweep::validate() const {
    if (!(f_step > 0.0)) throw std::invalid_argument("FrequencySweep: f_step must be > 0");
    for (const cplx& p : points)
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw std::invalid_argument("FrequencySweep: non-finite point");
}

FrequencyGrid FrequencyGrid::around(double f0, double half_span, std::size_t n) {
    if (n < 2) throw std::invalid_argument("FrequencyGrid: need at least 2 points");
    FrequencyGrid g;
    g.f_start = f0 - half_span;
    g.f_step = 2.0 * half_span / static_cast<double>(n - 1);
    g.n = n;
    return g;
}

void DelayLineScenario::validate() const {
    idt.validate();
    if (k2 < 0.0) throw std::invalid_argument("DelayLineScenario: k2 must be >= 0");
    if (distance_d < 0.0) throw std::invalid_argument("DelayLineScenario: distance_d must be >= 0");
    if (!(v_saw > 0.0)) throw std::invalid_argument("DelayLineScenario: v_saw must be > 0");
    if (t_crosstalk < 0.0) throw std::invalid_argument("DelayLineScenario: t_crosstalk must be >= 0");
    if (!(std::abs(crosstalk_amp) < 1.0))
        throw std::invalid_argument("DelayLineScenario: |crosstalk_amp| must be < 1");
    if (!(decay_length_l > 0.0))
        throw std::invalid_argument("DelayLineScenario: decay_length_l must be > 0");
}

FrequencySweep synth_sweep(const DelayLineScenario& scenario, const FrequencyGrid& grid) {
    scenario.validate();
    if (grid.n < 2 || !(grid.f_step > 0.0))
        throw std::invalid_argument("synth_sweep: invalid frequency grid");

    const IdtDesign& idt = scenario.idt;
    const double lobe_lo = idt.f0 * (1.0 - 2.0 / idt.n_periods);
    const double lobe_hi = idt.f0 * (1.0 + 2.0 / idt.n_periods);
    const double f_lo = grid.f_start;
    const double f_hi = grid.f_start + grid.f_step * static_cast<double>(grid.n - 1);
    if (f_lo > lobe_lo || f_hi < lobe_hi)
        throw std::invalid_argument(
            "synth_sweep: grid too narrow; it must span [f0(1-2/N), f0(1+2/N)]");

    const double ga0 = ga_at_resonance(idt, scenario.k2);
    const double decay = scenario.prop_loss();
    const double ts = scenario.t_saw();
    const double tc = scenario.t_crosstalk;

    FrequencySweep sweep;
    sweep.f_start = grid.f_start;
    sweep.f_step = grid.f_step;
    sweep.points.resize(grid.n);
    sweep.meta.distance_m = scenario.distance_d;

    for (std::size_t k = 0; k < grid.n; ++k) {
        const double f = sweep.freq(k);
        const double ga = ga_spectrum(idt, ga0, f);
        // both transducers contribute; the resonance product form extended
        // off resonance through ga_spectrum
        const double w = 2.0 * constants::pi * f;
        const double gz = ga * idt.z0;
        const double react = idt.z0 * w * idt.cg;
        const double il = 2.0 * gz / ((1.0 + gz) * (1.0 + gz) + react * react);
        const double a_saw = il;  // sqrt(IL_t) * sqrt(IL_r), IL_t = IL_r by reciprocity

        const cplx ph_c = std::polar(1.0, -2.0 * constants::pi * f * tc);
        const cplx ph_s = std::polar(1.0, -2.0 * constants::pi * f * ts);
        sweep.points[k] = scenario.crosstalk_amp * ph_c + a_saw * decay * ph_s;
    }
    return sweep;
}

std::vector<FrequencySweep> synth_distance_series(const DelayLineScenario& base,
                                                  const std::vector<double>& distances,
                                                  const FrequencyGrid& grid) {
    if (distances.empty())
        throw std::invalid_argument("synth_distance_series: distances must be non-empty");
    std::vector<FrequencySweep> out;
    out.reserve(distances.size());
    for (double d : distances) {
        if (d < 0.0)
            throw std::invalid_argument("synth_distance_series: distances must be >= 0");
        DelayLineScenario s = base;
        s.distance_d = d;
        out.push_back(synth_sweep(s, grid));
    }
    return out;
}

FrequencySweep add_noise(const FrequencySweep& sweep, double floor_db, std::uint64_t seed) {
    if (!(floor_db < 0.0)) throw std::invalid_argument("add_noise: floor_db must be < 0");
    const double rms = from_db(floor_db);
    const double sigma = rms / std::sqrt(2.0);  // per quadrature

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // 53-bit mantissa in (0, 1]
        return (static_cast<double>(rng() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    };

    FrequencySweep out = sweep;
    for (cplx& p : out.points) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double re = r * std::cos(2.0 * constants::pi * u2);
        const double im = r * std::sin(2.0 * constants::pi * u2);
        p += cplx(sigma * re, sigma * im);
    }
    return out;
}

}  // namespace sawline
