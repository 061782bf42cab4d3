#pragma once

#include "aer/problem.hpp"

#include <map>
#include <string>
#include <vector>

namespace aer {

struct AssumptionReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> violations;
    std::map<std::string, double> margins;

    void fail(std::string msg) {
        passed = false;
        violations.push_back(std::move(msg));
    }
};

// Sign of the traces and the jump condition u_plus - u_minus > 2 mu^2 on a 1024-point x grid.
AssumptionReport check_assumption1(const ProblemSpec& spec);

// Positivity of the phi radicands, spot-checked on a 64x64 grid. The area-integral
// sufficient condition is reported as margins but does not decide the verdict.
AssumptionReport check_assumption2(const ProblemSpec& spec);

}  // namespace aer
