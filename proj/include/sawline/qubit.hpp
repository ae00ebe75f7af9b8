// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "sawline/fft.hpp"
#include "sawline/idt.hpp"

namespace sawline {

// Tabulated radiation conductance Ga(f), e.g. exported from an external
// field simulation of a non-IDT capacitor geometry. Linear interpolation,
// no extrapolation.
struct AdmittanceTable {
    std::vector<double> f_hz;        // strictly increasing
    std::vector<double> ga_siemens;  // >= 0

    void validate() const;
    double ga_at(double f) const;  // throws if f outside the table range
};

// CSV with header "f_hz,ga_siemens", UTF-8, LF line endings.
AdmittanceTable load_admittance_table(const std::string& text);
std::string write_admittance_table(const AdmittanceTable& table);

// Radiation conductance from the IDT circuit model.
struct IdtAdmittanceSource {
    IdtDesign design;
    double k2 = 0.0;
};

// Transmon with a lossy shunt: junction inductance, shunt capacitance and a
// radiation conductance source (IDT circuit model or an external table).
struct QubitModel {
    using IdtSource = IdtAdmittanceSource;

    double l_j = 0.0;   // junction inductance, H
    double cg_q = 0.0;  // shunt capacitance, F
    std::variant<IdtAdmittanceSource, AdmittanceTable> admittance_source;

    void validate() const;
    double ga(double f) const;
    double plasmon_frequency() const;  // 1/(2 pi sqrt(Lj Cg))
};

// Y12(w) = [1 - w^2 Lj Cg + i w Lj Ga(w)] / (i w Lj), Ba neglected.
std::complex<double> total_admittance(const QubitModel& model, double f);

// Q(w) = w Cg / Ga(w); +infinity where Ga vanishes.
double q_factor(const QubitModel& model, double f);

// T1 = Cg / Ga(w_q) = Q / w_q.
double t1(const QubitModel& model, double f_q);

// f_q = f_p - E_C/h with E_C = e^2/(2 Cg), the standard transmon anharmonic
// correction (the literal printed form subtracts an energy from a frequency).
double qubit_frequency(const QubitModel& model);

// Interpolated table conductance pushed through Q = w Cg / Ga.
double q_from_table(const AdmittanceTable& table, double cg_q, double f);

}  // namespace sawline
