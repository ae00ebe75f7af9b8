// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sawline/fft.hpp"
#include "sawline/idt.hpp"

namespace sawline {

struct SweepMeta {
    double distance_m = 0.0;
    double temperature_k = 0.0;
    double bias_v = 0.0;
    std::string label;
};

// Complex two-port transmission on a uniform frequency grid.
struct FrequencySweep {
    double f_start = 0.0;  // Hz
    double f_step = 0.0;   // Hz, > 0
    std::vector<cplx> points;
    SweepMeta meta;

    std::size_t size() const { return points.size(); }
    double freq(std::size_t k) const { return f_start + f_step * static_cast<double>(k); }
    double f_stop() const { return points.empty() ? f_start : freq(points.size() - 1); }
    void validate() const;  // throws on non-positive step or non-finite points
};

struct FrequencyGrid {
    double f_start = 0.0;
    double f_step = 0.0;
    std::size_t n = 0;

    // 1601 points spanning f0 +/- 0.6 GHz, the VNA-like default
    static FrequencyGrid around(double f0, double half_span = 0.6e9, std::size_t n = 1601);
};

// Two-path transmission model: frequency-flat capacitive crosstalk with a
// fixed electrical delay, plus the acoustic path carrying both transducer
// insertion losses, the propagation decay e^{-d/2l} and the excess delay d/v.
struct DelayLineScenario {
    IdtDesign idt;
    double k2 = 2.32e-7;             // electromechanical coupling
    double distance_d = 1323e-6;     // IDT separation, m
    double v_saw = 5063.0;           // SAW phase velocity, m/s
    double t_crosstalk = 2.5e-9;     // electrical path delay t_c, s
    cplx crosstalk_amp = 1.7782794100389228e-3;  // 10^(-55/20), matches the
                                                 // measured background level
    double decay_length_l = 0.6e-3;  // amplitude decay length, m
    double noise_floor_db = 0.0;     // optional additive noise level; 0 = none

    void validate() const;
    // total acoustic arrival: the crosstalk delay is the common electrical
    // reference, so t_s = t_c + d/v
    double t_saw() const { return t_crosstalk + distance_d / v_saw; }
    double prop_loss() const { return std::exp(-distance_d / (2.0 * decay_length_l)); }
};

// Forward synthesis of S21 over the grid. The grid must span the full sinc
// main lobe [f0(1-2/N), f0(1+2/N)].
FrequencySweep synth_sweep(const DelayLineScenario& scenario, const FrequencyGrid& grid);

std::vector<FrequencySweep> synth_distance_series(const DelayLineScenario& base,
                                                  const std::vector<double>& distances,
                                                  const FrequencyGrid& grid);

// Adds circular complex Gaussian noise with RMS amplitude 10^(floor_db/20).
// Deterministic for a fixed seed (own Box-Muller over mt19937_64, so the
// byte stream is reproducible across standard libraries).
FrequencySweep add_noise(const FrequencySweep& sweep, double floor_db, std::uint64_t seed);

}  // namespace sawline
