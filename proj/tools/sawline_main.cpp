// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>

#include "sawline/cli.hpp"
#include "sawline/runconfig.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << sawline::usage_text();
        return 1;
    }
    const std::string sub = argv[1];
    if (sub == "-h" || sub == "--help" || sub == "help") {
        std::cout << sawline::usage_text();
        return 0;
    }
    try {
        sawline::RunConfig cfg;
        if (argc >= 3) cfg = sawline::RunConfig::load_file(argv[2]);
        for (int i = 3; i < argc; ++i) {
            const std::string arg = argv[i];
            const auto eq = arg.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error: override '" << arg << "' is not key=value\n";
                return 1;
            }
            cfg.set(arg.substr(0, eq), arg.substr(eq + 1));
        }
        return sawline::run_subcommand(sub, cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
