// SPDX-License-Identifier: Apache-2.0
#include "sawline/idt.hpp"

#include <cmath>
#include <stdexcept>

#include "sawline/constants.hpp"

namespace sawline {

const GeometryPreset& GeometryPreset::split_finger_supplement() {
    static const GeometryPreset p{"split-finger-supplement", 1.0836, 1.414};
    return p;
}

const GeometryPreset& GeometryPreset::split_finger_maintext() {
    static const GeometryPreset p{"split-finger-maintext", 1.414, 1.0836};
    return p;
}

const GeometryPreset& GeometryPreset::unity_ratio() {
    static const GeometryPreset p{"unity-ratio", 1.0, 1.0};
    return p;
}

const GeometryPreset& GeometryPreset::by_name(const std::string& name) {
    if (name == "split-finger-supplement") return split_finger_supplement();
    if (name == "split-finger-maintext") return split_finger_maintext();
    if (name == "unity-ratio") return unity_ratio();
    throw std::invalid_argument("unknown geometry preset: " + name);
}

void IdtDesign::validate() const {
    if (n_periods < 1) throw std::invalid_argument("IdtDesign: n_periods must be >= 1");
    if (!(f0 > 0.0)) throw std::invalid_argument("IdtDesign: f0 must be > 0");
    if (!(cg > 0.0)) throw std::invalid_argument("IdtDesign: cg must be > 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("IdtDesign: gamma must be > 0");
    if (!(zeta > 0.0)) throw std::invalid_argument("IdtDesign: zeta must be > 0");
    if (!(z0 > 0.0)) throw std::invalid_argument("IdtDesign: z0 must be > 0");
}

double IdtDesign::omega0() const { return 2.0 * constants::pi * f0; }

double ga_at_resonance(const IdtDesign& design, double k2) {
    design.validate();
    if (k2 < 0.0) throw std::invalid_argument("ga_at_resonance: k2 must be >= 0");
    if (k2 >= 0.01)
        throw std::invalid_argument(
            "ga_at_resonance: k2 >= 0.01 violates the weak-coupling assumption (Ga << 1/Z0)");
    return 8.0 * k2 * design.gamma * design.cg * design.f0 * design.n_periods / design.zeta;
}

double ga_spectrum(const IdtDesign& design, double ga0, double f) {
    if (ga0 < 0.0) throw std::invalid_argument("ga_spectrum: ga0 must be >= 0");
    if (!(f > 0.0)) throw std::invalid_argument("ga_spectrum: f must be > 0");
    const double x = design.n_periods * constants::pi * (f - design.f0) / design.f0;
    if (std::abs(x) < 1e-9) {
        // sinc(x)^2 = 1 - x^2/3 + O(x^4); keeps the removable singularity smooth
        const double s = 1.0 - x * x / 3.0;
        return ga0 * s;
    }
    const double s = std::sin(x) / x;
    return ga0 * s * s;
}

double insertion_loss(const IdtDesign& design, const RadiationAdmittance& ya) {
    design.validate();
    if (ya.g_a < 0.0) throw std::invalid_argument("insertion_loss: g_a must be >= 0");
    const double gz = ya.g_a * design.z0;
    const double react = design.z0 * (design.omega0() * design.cg + ya.b_a);
    return 2.0 * gz / ((1.0 + gz) * (1.0 + gz) + react * react);
}

double s21_resonance(const IdtDesign& design, double ga0, double prop_loss) {
    design.validate();
    if (ga0 < 0.0) throw std::invalid_argument("s21_resonance: ga0 must be >= 0");
    if (prop_loss < 0.0 || prop_loss > 1.0)
        throw std::invalid_argument("s21_resonance: prop_loss must lie in [0, 1]");
    const double wcz = design.omega0() * design.cg * design.z0;
    return 2.0 * ga0 * design.z0 * prop_loss / (1.0 + wcz * wcz);
}

double extract_k2(const IdtDesign& design, double s21_res, double prop_loss) {
    design.validate();
    if (!(s21_res > 0.0 && s21_res < 1.0))
        throw std::invalid_argument("extract_k2: s21_res must lie in (0, 1)");
    if (!(prop_loss > 0.0 && prop_loss <= 1.0))
        throw std::invalid_argument("extract_k2: prop_loss must lie in (0, 1]");
    const double wcz = design.omega0() * design.cg * design.z0;
    return (1.0 + wcz * wcz) / (2.0 * design.z0) * design.zeta /
           (8.0 * design.gamma * design.cg * design.f0 * design.n_periods * prop_loss) * s21_res;
}

}  // namespace sawline
