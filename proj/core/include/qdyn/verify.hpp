#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qdyn {

struct CheckResult {
    std::string name;
    double max_deviation;
    double threshold;
    int samples;

    bool passed() const { return max_deviation < threshold; }
};

/// Seeded property suites: Moebius conjugacy to S (m = 1, 2, 3), the scaling
/// theorem, agreement of the four families, fixed- and critical-point
/// residuals, and closed-form stability moduli against direct evaluation.
std::vector<CheckResult> run_verification(std::uint64_t seed);

}  // namespace qdyn
