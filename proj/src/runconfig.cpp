// SPDX-License-Identifier: Apache-2.0
#include "sawline/runconfig.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sawline {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

const std::map<std::string, double>& unit_table() {
    static const std::map<std::string, double> units = {
        {"Hz", 1.0},    {"kHz", 1e3},  {"MHz", 1e6},  {"GHz", 1e9},
        {"s", 1.0},     {"ms", 1e-3},  {"us", 1e-6},  {"ns", 1e-9},  {"ps", 1e-12},
        {"m", 1.0},     {"mm", 1e-3},  {"um", 1e-6},  {"µm", 1e-6}, {"nm", 1e-9},
        {"F", 1.0},     {"pF", 1e-12}, {"fF", 1e-15},
        {"H", 1.0},     {"nH", 1e-9},  {"pH", 1e-12},
        {"S", 1.0},     {"V", 1.0},    {"K", 1.0},    {"Ohm", 1.0},  {"eV", 1.0},
        {"dB", 1.0},    {"dBm", 1.0},
    };
    return units;
}

}  // namespace

double RunConfig::parse_quantity(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("config: empty numeric value");
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc())
        throw std::invalid_argument("config: invalid number '" + t + "'");
    std::string suffix = trim(std::string(ptr, last));
    if (suffix.empty()) return value;
    const auto& units = unit_table();
    const auto it = units.find(suffix);
    if (it == units.end())
        throw std::invalid_argument("config: unknown unit suffix '" + suffix + "'");
    return value * it->second;
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.entries_.count(key))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
        cfg.entries_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) != 0; }

double RunConfig::number(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw std::invalid_argument("config: missing required key '" + key + "'");
    return parse_quantity(it->second);
}

double RunConfig::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::vector<double> RunConfig::number_list(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw std::invalid_argument("config: missing required key '" + key + "'");
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_quantity(item));
    if (out.empty()) throw std::invalid_argument("config: empty list for key '" + key + "'");
    return out;
}

std::string RunConfig::str(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw std::invalid_argument("config: missing required key '" + key + "'");
    return it->second;
}

std::string RunConfig::str_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? entries_.at(key) : fallback;
}

std::vector<std::string> RunConfig::str_list(const std::string& key) const {
    std::vector<std::string> out;
    std::istringstream in(str(key));
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    if (out.empty()) throw std::invalid_argument("config: empty list for key '" + key + "'");
    return out;
}

void RunConfig::set(const std::string& key, const std::string& value) { entries_[key] = value; }

void RunConfig::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : entries_)
        if (!allowed.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");
}

}  // namespace sawline
