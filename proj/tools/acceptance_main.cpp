#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "isacsense/acceptance.hpp"

// Standalone acceptance gate: one pass/fail line per criterion, exit 5 on
// any failure. The CLI's validate subcommand runs the same criteria and
// adds a CSV summary; this binary is the bare harness kept free of I/O so
// it can run in minimal environments.
int main(int argc, char** argv) {
    using namespace isacsense;

    Level level = Level::Full;
    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--level" && i + 1 < argc) {
            const std::string v = argv[++i];
            if (v == "fast") {
                level = Level::Fast;
            } else if (v == "full") {
                level = Level::Full;
            } else {
                std::fprintf(stderr, "unknown level '%s' (expected fast or full)\n", v.c_str());
                return 2;
            }
        } else if (arg == "--only" && i + 1 < argc) {
            only.emplace_back(argv[++i]);
        } else if (arg == "--list") {
            for (const std::string& n : all_criterion_names()) std::printf("%s\n", n.c_str());
            return 0;
        } else if (arg == "-h" || arg == "--help") {
            std::printf("usage: acceptance [--level fast|full] [--only <criterion>]... [--list]\n");
            return 0;
        } else {
            std::fprintf(stderr, "unknown argument '%s'\n", arg.c_str());
            return 2;
        }
    }

    const std::vector<std::string> known = all_criterion_names();
    for (const std::string& name : only) {
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            std::fprintf(stderr, "unknown criterion '%s' (see --list)\n", name.c_str());
            return 2;
        }
    }

    const std::vector<std::string>& names = only.empty() ? known : only;
    bool all_ok = true;
    for (const std::string& name : names) {
        CriterionResult r;
        try {
            r = run_criterion(name, level);
        } catch (const std::exception& e) {
            r = CriterionResult{name, false, std::string("threw: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && r.passed;
    }
    return all_ok ? 0 : 5;
}
