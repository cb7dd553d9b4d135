#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace suspension {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the ten canned verification criteria. Every tolerance is fixed in
/// code; statistical checks use 3 standard errors or chi-square p > 0.001,
/// exact checks compare dyadic rationals or use 1e-12 after conversion.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, unsigned threads);

/// Single criterion by id (1-10), for selective reruns.
CriterionResult run_criterion(int id, std::uint64_t seed, unsigned threads);

}  // namespace suspension
