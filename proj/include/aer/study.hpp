#pragma once

#include "aer/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace aer {

struct StudyRow {
    std::string axis;
    double delta = 0.0;
    double mu = 0.0;
    int n = 0;
    std::uint64_t seed = 0;
    double rel_err_f = -1.0;   // -1 when not computed
    double rel_err_u0 = -1.0;
    double width = -1.0;
    double width_ratio = -1.0;  // width / (mu |ln mu|)
    std::string status = "ok";
};

struct StudyFit {
    std::string axis;
    std::string quantity;
    double slope = 0.0;
    int points = 0;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<StudyFit> fits;
};

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Runs `tasks` on up to `workers` threads; exceptions are rethrown after all finish.
void run_parallel(std::vector<std::function<void()>>& tasks, int workers);

StudyResult run_study(const RunConfig& cfg, int workers);

std::string study_csv(const StudyResult& r);

}  // namespace aer
