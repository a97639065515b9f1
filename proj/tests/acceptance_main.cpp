// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure.  The same suite backs the CLI's `selftest` subcommand.

#include <cstdio>
#include <cstring>

#include "tadic/selftest.hpp"

int main(int argc, char** argv) {
    tadic::Config cfg;
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::strcmp(argv[i], "--q") == 0) cfg = tadic::Config::for_q(std::atoi(argv[i + 1]));
    auto results = tadic::run_acceptance(cfg);
    bool all = true;
    for (const auto& r : results) {
        std::printf("criterion %2d %s  %-26s (%.2fs)  %s\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.c_str());
        all = all && r.pass;
    }
    std::printf(all ? "acceptance: all criteria pass\n" : "acceptance: FAILURES\n");
    return all ? 0 : 1;
}
