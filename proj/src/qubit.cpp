// SPDX-License-Identifier: Apache-2.0
#include "sawline/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sawline/constants.hpp"

namespace sawline {

void AdmittanceTable::validate() const {
    if (f_hz.size() != ga_siemens.size())
        throw std::invalid_argument("AdmittanceTable: column length mismatch");
    if (f_hz.empty()) throw std::invalid_argument("AdmittanceTable: empty table");
    for (std::size_t i = 0; i < f_hz.size(); ++i) {
        if (i > 0 && !(f_hz[i] > f_hz[i - 1]))
            throw std::invalid_argument("AdmittanceTable: frequencies must be strictly increasing");
        if (ga_siemens[i] < 0.0)
            throw std::invalid_argument("AdmittanceTable: ga must be >= 0");
    }
}

double AdmittanceTable::ga_at(double f) const {
    validate();
    if (f < f_hz.front() || f > f_hz.back())
        throw std::invalid_argument("AdmittanceTable: frequency outside table range (no extrapolation)");
    if (f_hz.size() == 1) return ga_siemens.front();
    auto it = std::lower_bound(f_hz.begin(), f_hz.end(), f);
    if (it == f_hz.begin()) return ga_siemens.front();
    const std::size_t hi = static_cast<std::size_t>(it - f_hz.begin());
    const std::size_t lo = hi - 1;
    if (hi == f_hz.size()) return ga_siemens.back();
    const double w = (f - f_hz[lo]) / (f_hz[hi] - f_hz[lo]);
    return ga_siemens[lo] + w * (ga_siemens[hi] - ga_siemens[lo]);
}

AdmittanceTable load_admittance_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("admittance table: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "f_hz,ga_siemens")
        throw std::invalid_argument("admittance table: expected header 'f_hz,ga_siemens'");
    AdmittanceTable t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("admittance table: missing comma on line " +
                                        std::to_string(lineno));
        std::size_t pos1 = 0, pos2 = 0;
        double f = 0.0, g = 0.0;
        try {
            f = std::stod(line.substr(0, comma), &pos1);
            g = std::stod(line.substr(comma + 1), &pos2);
        } catch (const std::exception&) {
            throw std::invalid_argument("admittance table: bad number on line " +
                                        std::to_string(lineno));
        }
        t.f_hz.push_back(f);
        t.ga_siemens.push_back(g);
    }
    t.validate();
    return t;
}

std::string write_admittance_table(const AdmittanceTable& table) {
    table.validate();
    std::ostringstream out;
    out << "f_hz,ga_siemens\n";
    char buf[64];
    for (std::size_t i = 0; i < table.f_hz.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", table.f_hz[i], table.ga_siemens[i]);
        out << buf;
    }
    return out.str();
}

void QubitModel::validate() const {
    if (!(l_j > 0.0)) throw std::invalid_argument("QubitModel: l_j must be > 0");
    if (!(cg_q > 0.0)) throw std::invalid_argument("QubitModel: cg_q must be > 0");
    if (const auto* src = std::get_if<IdtSource>(&admittance_source)) {
        src->design.validate();
        if (src->k2 < 0.0) throw std::invalid_argument("QubitModel: k2 must be >= 0");
    } else {
        std::get<AdmittanceTable>(admittance_source).validate();
    }
}

double QubitModel::ga(double f) const {
    if (const auto* src = std::get_if<IdtSource>(&admittance_source)) {
        const double ga0 = ga_at_resonance(src->design, src->k2);
        return ga_spectrum(src->design, ga0, f);
    }
    return std::get<AdmittanceTable>(admittance_source).ga_at(f);
}

double QubitModel::plasmon_frequency() const {
    return 1.0 / (2.0 * constants::pi * std::sqrt(l_j * cg_q));
}

std::complex<double> total_admittance(const QubitModel& model, double f) {
    model.validate();
    if (!(f > 0.0)) throw std::invalid_argument("total_admittance: f must be > 0");
    const double w = 2.0 * constants::pi * f;
    const std::complex<double> numer(1.0 - w * w * model.l_j * model.cg_q,
                                     w * model.l_j * model.ga(f));
    return numer / std::complex<double>(0.0, w * model.l_j);
}

double q_factor(const QubitModel& model, double f) {
    model.validate();
    if (!(f > 0.0)) throw std::invalid_argument("q_factor: f must be > 0");
    const double ga = model.ga(f);
    if (ga <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * constants::pi * f * model.cg_q / ga;
}

double t1(const QubitModel& model, double f_q) {
    model.validate();
    if (!(f_q > 0.0)) throw std::invalid_argument("t1: f_q must be > 0");
    const double ga = model.ga(f_q);
    if (ga <= 0.0) return std::numeric_limits<double>::infinity();
    return model.cg_q / ga;
}

double qubit_frequency(const QubitModel& model) {
    model.validate();
    const double e = constants::elementary_charge;
    const double ec = e * e / (2.0 * model.cg_q);  // charging energy, J
    return model.plasmon_frequency() - ec / constants::planck;
}

double q_from_table(const AdmittanceTable& table, double cg_q, double f) {
    if (!(cg_q > 0.0)) throw std::invalid_argument("q_from_table: cg_q must be > 0");
    const double ga = table.ga_at(f);
    if (ga <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * constants::pi * f * cg_q / ga;
}

}  // namespace sawline
