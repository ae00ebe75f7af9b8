// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawline/delayline.hpp"

namespace sawline {

// The 2-port subset of the Touchstone v1 grammar:
//   - '!' comment lines (kept as metadata), optional inline '!' comments
//   - exactly one option line '# <HZ|KHZ|MHZ|GHZ> S <RI|MA|DB> R <ohms>'
//     before any data (defaults '# GHZ S MA R 50' if absent)
//   - data lines of exactly 9 numbers: f S11 S21 S12 S22 (2-port ordering),
//     frequencies strictly increasing
struct TouchstoneRecord {
    enum class Format { real_imag, mag_angle, db_angle };
    double frequency_unit_hz = 1e9;  // multiplier for the frequency column
    Format format = Format::mag_angle;
    double reference_ohms = 50.0;
    std::vector<double> freq_hz;
    std::vector<std::array<std::complex<double>, 4>> s;  // S11 S21 S12 S22
    std::vector<std::string> comments;
};

struct TouchstoneParseError : std::runtime_error {
    int line;
    explicit TouchstoneParseError(int line_, const std::string& what_)
        : std::runtime_error("touchstone:" + std::to_string(line_) + ": " + what_), line(line_) {}
};

TouchstoneRecord parse_touchstone_record(const std::string& text);

// S21 on the declared (required uniform) grid; comments land in meta.label,
// and 'meta' key-value comments written by write_touchstone are restored.
FrequencySweep parse_touchstone(const std::string& text);

// '# HZ S RI R 50' 2-port output with S11 = S22 = 0 and S12 = S21
// (reciprocity), 12 significant digits, LF line endings. Deterministic.
std::string write_touchstone(const FrequencySweep& sweep);

}  // namespace sawline
