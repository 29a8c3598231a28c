// Consistency report: one section per verification check, an overall verdict,
// and the resolved config echoed for reproducibility.

#pragma once

#include <string>
#include <vector>

#include "bdgsol/config.hpp"

namespace bdgsol {

struct SectionResult {
    std::string name;
    bool pass = true;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ConsistencyReport {
    std::vector<SectionResult> sections;
    bool pass = true;
    std::string config_echo;

    std::string render() const;
};

ConsistencyReport run_verification(const RunConfig& config, double tol_scale = 1.0,
                                   int threads = 1);

}  // namespace bdgsol
