// SPDX-License-Identifier: Apache-2.0
#include "sawline/idt.hpp"

#include <stdexcept>

#include <random>

#include "doctest.h"
#include "sawline/constants.hpp"

using namespace sawline;

namespace {

IdtDesign reference_design(const GeometryPreset& p = GeometryPreset::unity_ratio()) {
    IdtDesign d;
    d.n_periods = 50;
    d.f0 = 4.583e9;
    d.cg = 318e-15;
    d.gamma = p.gamma;
    d.zeta = p.zeta;
    d.z0 = 50.0;
    return d;
}

}  // namespace

TEST_CASE("ga_at_resonance") {
    const IdtDesign d = reference_design();
    CHECK(ga_at_resonance(d, 0.0) == 0.0);
    // 8 * 2.32e-7 * 318 fF * 4.583 GHz * 50
    CHECK(ga_at_resonance(d, 2.32e-7) == doctest::Approx(1.35246163200e-7).epsilon(1e-12));
    const IdtDesign ds = reference_design(GeometryPreset::split_finger_supplement());
    CHECK(ga_at_resonance(ds, 2.32e-7) == doctest::Approx(1.03644089423e-7).epsilon(1e-11));

    // linear in k2
    CHECK(ga_at_resonance(d, 2e-7) == doctest::Approx(2.0 * ga_at_resonance(d, 1e-7)));
    CHECK_THROWS_AS(ga_at_resonance(d, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(ga_at_resonance(d, -1e-9), std::invalid_argument);
}

TEST_CASE("ga_spectrum: sinc^2 shape, nulls and bound") {
    const IdtDesign d = reference_design();
    const double ga0 = 1.353e-7;
    CHECK(ga_spectrum(d, ga0, d.f0) == doctest::Approx(ga0));
    // nulls exactly at f0(1 +- k/N)
    for (int k = 1; k <= 3; ++k) {
        CHECK(ga_spectrum(d, ga0, d.f0 * (1.0 + k / 50.0)) <= ga0 * 1e-25);
        CHECK(ga_spectrum(d, ga0, d.f0 * (1.0 - k / 50.0)) <= ga0 * 1e-25);
    }
    // half-way to the first null: (sin(pi/2)/(pi/2))^2 = (2/pi)^2
    CHECK(ga_spectrum(d, ga0, d.f0 * (1.0 + 1.0 / 100.0)) ==
          doctest::Approx(ga0 * 0.405284734569).epsilon(1e-10));
    // bounded by the resonance value
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double f = d.f0 * uni(rng);
        CHECK(ga_spectrum(d, ga0, f) <= ga0);
    }
}

TEST_CASE("insertion_loss") {
    const IdtDesign d = reference_design();
    CHECK(insertion_loss(d, {0.0, 0.0}) == 0.0);
    CHECK(insertion_loss(d, {1.357e-7, 0.0}) == doctest::Approx(1.121817938631e-5).epsilon(1e-10));
    // matched limit: Ga Z0 = 1 with the capacitance tuned out gives 1/2
    RadiationAdmittance matched{1.0 / d.z0, -d.omega0() * d.cg};
    CHECK(insertion_loss(d, matched) == doctest::Approx(0.5).epsilon(1e-12));
    // passivity over random admittances
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        RadiationAdmittance ya{uni(rng) * 0.05, (uni(rng) - 0.5) * 0.02};
        const double il = insertion_loss(d, ya);
        CHECK(il >= 0.0);
        CHECK(il <= 1.0);
    }
}

TEST_CASE("s21_resonance") {
    const IdtDesign d = reference_design();
    // |S21(w0)| = 1.1221e-5 at -99.0 dB for the reference transducer
    const double s = s21_resonance(d, 1.357e-7, 1.0);
    CHECK(s == doctest::Approx(1.1218305236e-5).epsilon(1e-10));
    CHECK(to_db(s) == doctest::Approx(-99.0).epsilon(1e-4));
    CHECK(s21_resonance(d, 1.357e-7, 0.0) == 0.0);
    CHECK(s21_resonance(d, 0.0, 1.0) == 0.0);
    // monotone in ga0 and prop_loss
    CHECK(s21_resonance(d, 2e-7, 0.5) > s21_resonance(d, 1e-7, 0.5));
    CHECK(s21_resonance(d, 1e-7, 0.9) > s21_resonance(d, 1e-7, 0.5));
}

TEST_CASE("extract_k2 reproduces the reference coupling for all three presets") {
    // |S21| = 1.1221e-5 (-99 dB), f0 = 4.583 GHz, Cg = 318 fF, N = 50, L = 1
    const double s21 = 1.1221e-5;
    const double k2_unity = extract_k2(reference_design(), s21, 1.0);
    CHECK(k2_unity == doctest::Approx(2.32e-7).epsilon(0.01));
    CHECK(k2_unity == doctest::Approx(2.328344234314e-7).epsilon(1e-10));

    const double k2_main =
        extract_k2(reference_design(GeometryPreset::split_finger_maintext()), s21, 1.0);
    CHECK(k2_main == doctest::Approx(1.78e-7).epsilon(0.01));

    const double k2_supp =
        extract_k2(reference_design(GeometryPreset::split_finger_supplement()), s21, 1.0);
    CHECK(k2_supp == doctest::Approx(3.04e-7).epsilon(0.01));

    // swapping the preset assignment scales K^2 by (1.414/1.0836)^2
    CHECK(k2_main / k2_supp == doctest::Approx(1.0 / 1.702788961668).epsilon(1e-12));

    CHECK_THROWS_AS(extract_k2(reference_design(), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(extract_k2(reference_design(), s21, 0.0), std::invalid_argument);
}

TEST_CASE("extract_k2 inverts ga_at_resonance . s21_resonance exactly") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> logk2(-9.0, -4.0);
    std::uniform_real_distribution<double> lossu(0.05, 1.0);
    const GeometryPreset* presets[] = {&GeometryPreset::unity_ratio(),
                                       &GeometryPreset::split_finger_maintext(),
                                       &GeometryPreset::split_finger_supplement()};
    for (int i = 0; i < 300; ++i) {
        const IdtDesign d = reference_design(*presets[i % 3]);
        const double k2 = std::pow(10.0, logk2(rng));
        const double loss = lossu(rng);
        const double ga0 = ga_at_resonance(d, k2);
        const double s21 = s21_resonance(d, ga0, loss);
        const double back = extract_k2(d, s21, loss);
        CHECK(back == doctest::Approx(k2).epsilon(1e-12));
    }
}

TEST_CASE("geometry presets are the published assignments") {
    CHECK(GeometryPreset::split_finger_supplement().gamma == 1.0836);
    CHECK(GeometryPreset::split_finger_supplement().zeta == 1.414);
    CHECK(GeometryPreset::split_finger_maintext().gamma == 1.414);
    CHECK(GeometryPreset::split_finger_maintext().zeta == 1.0836);
    CHECK(GeometryPreset::unity_ratio().gamma == 1.0);
    CHECK(GeometryPreset::unity_ratio().zeta == 1.0);
    CHECK_THROWS_AS(GeometryPreset::by_name("bogus"), std::invalid_argument);
}

TEST_CASE("design validation") {
    IdtDesign d = reference_design();
    d.n_periods = 0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d = reference_design();
    d.cg = 0.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
