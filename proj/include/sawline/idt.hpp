// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace sawline {

// Dimensionless geometry factors of the transducer electrode layout.
// Three presets ship because published sources disagree on which of the
// two split-finger numbers is gamma and which is zeta, and only the
// unity-ratio assignment is consistent with the reference K^2 extraction.
struct GeometryPreset {
    std::string name;
    double gamma;
    double zeta;

    static const GeometryPreset& split_finger_supplement();  // gamma=1.0836, zeta=1.414
    static const GeometryPreset& split_finger_maintext();    // gamma=1.414,  zeta=1.0836
    static const GeometryPreset& unity_ratio();              // gamma=zeta=1 (default)
    static const GeometryPreset& by_name(const std::string& name);
};

// Lumped description of an interdigital transducer.
struct IdtDesign {
    int n_periods = 50;        // N, finger period count
    double f0 = 4.583e9;       // electromechanical resonance, Hz
    double cg = 318e-15;       // geometric capacitance, F
    double gamma = 1.0;        // geometry factor
    double zeta = 1.0;         // geometry factor
    double z0 = 50.0;          // reference impedance, Ohm

    void validate() const;     // throws std::invalid_argument
    double omega0() const;
};

struct RadiationAdmittance {
    double g_a = 0.0;  // conductance, S (>= 0)
    double b_a = 0.0;  // susceptance, S; negligible for weak coupling and
                       // defaulted to zero, kept for forward compatibility
};

// Radiation conductance at resonance: Ga(w0) = 8 K^2 gamma Cg f0 N / zeta.
// Rejects k2 >= 0.01 where the weak-coupling model (Ga << 1/Z0) breaks down.
double ga_at_resonance(const IdtDesign& design, double k2);

// Conductance away from resonance: ga0 * sinc^2(N pi (f-f0)/f0), the
// bounded decaying form (the printed source has the ratio inverted).
double ga_spectrum(const IdtDesign& design, double ga0, double f);

// Power fraction launched into the forward-going acoustic wave:
// 2 Ga Z0 / [(1+Ga Z0)^2 + (Z0 (w0 Cg + Ba))^2].
double insertion_loss(const IdtDesign& design, const RadiationAdmittance& ya);

// Resonance transmission amplitude, weak-coupling form:
// |S21(w0)| = 2 ga0 Z0 L / (1 + (w0 Cg Z0)^2).
double s21_resonance(const IdtDesign& design, double ga0, double prop_loss);

// Inverse of ga_at_resonance . s21_resonance:
// K^2 = [1+(w0 Cg Z0)^2]/(2 Z0) * zeta/(8 gamma Cg f0 N L) * |S21(w0)|.
double extract_k2(const IdtDesign& design, double s21_res, double prop_loss);

}  // namespace sawline
