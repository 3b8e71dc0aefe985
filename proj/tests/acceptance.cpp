#include "surfdef/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>

// Prints one PASS/FAIL line per acceptance criterion, followed by the checked clauses.
int main(int argc, char** argv) {
    sd::VerifyOptions opt;
    if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    sd::run_acceptance(opt, [&](const sd::CriterionResult& r) {
        all &= r.pass();
        std::printf("criterion %d: %s  %s (%.1fs)\n", r.id, r.pass() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        for (const auto& c : r.clauses)
            std::printf("    [%s] %s: %s\n", c.ok ? "ok" : "FAILED", c.claim.c_str(), c.detail.c_str());
        std::fflush(stdout);
    });
    std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
    return all ? 0 : 1;
}
