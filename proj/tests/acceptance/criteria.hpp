#pragma once

#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0;   // seconds
    std::string detail;  // first failure, or a short summary
};

// Runs criteria 1..10 in order; `only` restricts to the listed ids.
// The callback sees each result as soon as it is known.
std::vector<CriterionResult> run_all(int jobs, const std::vector<int>& only = {},
                                     const std::function<void(const CriterionResult&)>& onResult = {});

std::string format_line(const CriterionResult& r);

}  // namespace acceptance
