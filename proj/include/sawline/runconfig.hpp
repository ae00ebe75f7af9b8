// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sawline {

// Flat key = value document. '#' starts a comment. Values are either plain
// SI numbers, numbers with an explicit unit suffix (4.583 GHz, 318 fF,
// 1323 um, -55 dB, 2.5 ns ...), comma-separated lists of those, or strings.
class RunConfig {
  public:
    static RunConfig parse(const std::string& text);
    static RunConfig load_file(const std::string& path);

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::vector<double> number_list(const std::string& key) const;
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    std::vector<std::string> str_list(const std::string& key) const;

    // every key must be consumed by one of the accessors above or listed
    // here; run_subcommand calls this to reject unknown keys
    void require_known(const std::set<std::string>& allowed) const;

    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& entries() const { return entries_; }

    // "1323 um" -> 1.323e-3; throws std::invalid_argument on unknown suffix
    static double parse_quantity(const std::string& text);

  private:
    std::map<std::string, std::string> entries_;
};

}  // namespace sawline
