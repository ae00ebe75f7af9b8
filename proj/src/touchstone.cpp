// SPDX-License-Identifier: Apache-2.0
#include "sawline/touchstone.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sawline/constants.hpp"

namespace sawline {

namespace {

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_number(const std::string& tok, int lineno) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw TouchstoneParseError(lineno, "invalid number '" + tok + "'");
    if (!std::isfinite(value))
        throw TouchstoneParseError(lineno, "non-finite number '" + tok + "'");
    return value;
}

std::complex<double> decode_pair(TouchstoneRecord::Format fmt, double a, double b) {
    switch (fmt) {
        case TouchstoneRecord::Format::real_imag:
            return {a, b};
        case TouchstoneRecord::Format::mag_angle:
            return std::polar(a, b * constants::pi / 180.0);
        case TouchstoneRecord::Format::db_angle:
            return std::polar(std::pow(10.0, a / 20.0), b * constants::pi / 180.0);
    }
    return {};
}

}  // namespace

TouchstoneRecord parse_touchstone_record(const std::string& text) {
    TouchstoneRecord rec;
    bool have_option = false;
    bool have_data = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();

        // inline comments
        std::string line = raw;
        if (const auto bang = line.find('!'); bang != std::string::npos) {
            std::string c = line.substr(bang + 1);
            if (bang == 0 || line.find_first_not_of(" \t") == bang) {
                rec.comments.push_back(c);
                continue;
            }
            rec.comments.push_back(c);
            line.erase(bang);
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;

        if (line[first] == '#') {
            if (have_option)
                throw TouchstoneParseError(lineno, "duplicate option line");
            if (have_data)
                throw TouchstoneParseError(lineno, "option line after data");
            auto toks = split_ws(line.substr(first + 1));
            for (auto& t : toks) t = upper(t);
            // grammar: [unit] [S] [RI|MA|DB] [R ohms], tokens in this order
            std::size_t i = 0;
            auto take = [&](const std::string& what) -> std::string {
                if (i >= toks.size())
                    throw TouchstoneParseError(lineno, "option line missing " + what);
                return toks[i++];
            };
            const std::string unit = take("frequency unit");
            if (unit == "HZ")
                rec.frequency_unit_hz = 1.0;
            else if (unit == "KHZ")
                rec.frequency_unit_hz = 1e3;
            else if (unit == "MHZ")
                rec.frequency_unit_hz = 1e6;
            else if (unit == "GHZ")
                rec.frequency_unit_hz = 1e9;
            else
                throw TouchstoneParseError(lineno, "unknown frequency unit '" + unit + "'");
            const std::string kind = take("parameter kind");
            if (kind != "S")
                throw TouchstoneParseError(lineno,
                                           "unsupported parameter kind '" + kind + "' (only S)");
            const std::string fmt = take("data format");
            if (fmt == "RI")
                rec.format = TouchstoneRecord::Format::real_imag;
            else if (fmt == "MA")
                rec.format = TouchstoneRecord::Format::mag_angle;
            else if (fmt == "DB")
                rec.format = TouchstoneRecord::Format::db_angle;
            else
                throw TouchstoneParseError(lineno, "unknown data format '" + fmt + "'");
            const std::string r = take("reference marker");
            if (r != "R") throw TouchstoneParseError(lineno, "expected 'R' before impedance");
            rec.reference_ohms = parse_number(take("reference impedance"), lineno);
            if (!(rec.reference_ohms > 0.0))
                throw TouchstoneParseError(lineno, "reference impedance must be > 0");
            if (i != toks.size())
                throw TouchstoneParseError(lineno, "trailing tokens on option line");
            have_option = true;
            continue;
        }

        const auto toks = split_ws(line);
        if (toks.size() != 9)
            throw TouchstoneParseError(
                lineno, "expected 9 values per 2-port data line (f + 4 S pairs), got " +
                            std::to_string(toks.size()));
        std::array<double, 9> vals{};
        for (std::size_t i = 0; i < 9; ++i) vals[i] = parse_number(toks[i], lineno);

        const double f = vals[0] * rec.frequency_unit_hz;
        if (!rec.freq_hz.empty() && !(f > rec.freq_hz.back()))
            throw TouchstoneParseError(lineno, "frequencies must be strictly increasing");
        rec.freq_hz.push_back(f);
        // 2-port column order: S11 S21 S12 S22
        rec.s.push_back({decode_pair(rec.format, vals[1], vals[2]),
                         decode_pair(rec.format, vals[3], vals[4]),
                         decode_pair(rec.format, vals[5], vals[6]),
                         decode_pair(rec.format, vals[7], vals[8])});
        have_data = true;
    }
    return rec;
}

FrequencySweep parse_touchstone(const std::string& text) {
    const TouchstoneRecord rec = parse_touchstone_record(text);
    FrequencySweep sweep;
    if (rec.freq_hz.empty()) {
        sweep.f_step = 1.0;  // header-only file: empty sweep
    } else if (rec.freq_hz.size() == 1) {
        sweep.f_start = rec.freq_hz.front();
        sweep.f_step = 1.0;
        sweep.points.push_back(rec.s.front()[1]);
    } else {
        const double step = rec.freq_hz[1] - rec.freq_hz[0];
        for (std::size_t i = 1; i < rec.freq_hz.size(); ++i) {
            const double s = rec.freq_hz[i] - rec.freq_hz[i - 1];
            if (std::abs(s - step) > 1e-6 * step)
                throw TouchstoneParseError(static_cast<int>(i) + 1,
                                           "frequency grid is not uniform");
        }
        sweep.f_start = rec.freq_hz.front();
        sweep.f_step = step;
        sweep.points.reserve(rec.s.size());
        for (const auto& row : rec.s) sweep.points.push_back(row[1]);
    }
    for (const std::string& c : rec.comments) {
        // restore meta comments of the form ' meta <key> = <value>'
        std::istringstream cs(c);
        std::string word, key, eq;
        cs >> word;
        if (word == "meta" && (cs >> key >> eq) && eq == "=") {
            double value = 0.0;
            if (cs >> value) {
                if (key == "distance_m") sweep.meta.distance_m = value;
                else if (key == "temperature_k") sweep.meta.temperature_k = value;
                else if (key == "bias_v") sweep.meta.bias_v = value;
                continue;
            }
        }
        if (!sweep.meta.label.empty()) sweep.meta.label += "; ";
        sweep.meta.label += c;
    }
    return sweep;
}

std::string write_touchstone(const FrequencySweep& sweep) {
    std::ostringstream out;
    char buf[256];
    if (sweep.meta.distance_m != 0.0) {
        std::snprintf(buf, sizeof buf, "! meta distance_m = %.12g\n", sweep.meta.distance_m);
        out << buf;
    }
    if (sweep.meta.temperature_k != 0.0) {
        std::snprintf(buf, sizeof buf, "! meta temperature_k = %.12g\n", sweep.meta.temperature_k);
        out << buf;
    }
    if (sweep.meta.bias_v != 0.0) {
        std::snprintf(buf, sizeof buf, "! meta bias_v = %.12g\n", sweep.meta.bias_v);
        out << buf;
    }
    if (!sweep.meta.label.empty()) out << "! " << sweep.meta.label << "\n";
    out << "# HZ S RI R 50\n";
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        const cplx s21 = sweep.points[k];
        std::snprintf(buf, sizeof buf, "%.12g 0 0 %.12g %.12g %.12g %.12g 0 0\n", sweep.freq(k),
                      s21.real(), s21.imag(), s21.real(), s21.imag());
        out << buf;
    }
    return out.str();
}

}  // namespace sawline
