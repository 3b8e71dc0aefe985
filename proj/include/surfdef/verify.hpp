#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sd {

// One checked statement: the claim being reproduced, whether it held, and what was computed.
struct Clause {
    std::string claim;
    bool ok = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Clause> clauses;
    double seconds = 0;
    bool pass() const;
    // First failing claim, or empty.
    std::string failure_summary() const;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int property_cases = 200;
    int h1_seeds = 2;
};

// Criteria 1..9 in order; on_done is called as each one finishes.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_done = {});

// A single criterion by number.
CriterionResult run_criterion(int id, const VerifyOptions& opt);

} // namespace sd
