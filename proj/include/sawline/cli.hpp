// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "sawline/runconfig.hpp"

namespace sawline {

// Composes the library operations behind the subcommands
//   simulate | gate | fit-velocity | fit-loss | extract-k2 | qubit-q | charge-profile
// Returns the process exit status: 0 success, 1 validation/parse error,
// 2 solver failure. Error messages name the violated precondition.
int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& out,
                   std::ostream& err);

std::string usage_text();

// write-temp-then-rename so partially written artifacts never appear
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace sawline
