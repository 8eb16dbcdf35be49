#pragma once

#include <string>
#include <vector>

namespace cwac {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // measured values, or the first divergence found
    double seconds = 0.0;
};

// Runs the ten release checks in order.  Exceptions inside a criterion
// fail that criterion (message lands in detail) without stopping the
// rest.  The whole run is deterministic: fixed seeds, fixed tolerances,
// no wall-clock dependence.
std::vector<CriterionResult> run_acceptance();

}  // namespace cwac
