#pragma once

#include "aer/layer.hpp"
#include "aer/pipeline.hpp"
#include "aer/problem.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace aer {

struct ForwardBlock {
    int n = 100;
    int m = 100;
    double cfl = 0.4;
    std::vector<double> snapshot_times;  // empty: summary only
    double t_end = -1.0;                 // <= 0: last snapshot time, or T
    InitialKind initial = InitialKind::asymptotic;
};

struct AsymptoteBlock {
    int n = 50;
    int m = 50;
    int nt = 100;
    bool first_order = false;
};

struct StudyBlock {
    std::vector<double> delta;
    std::vector<double> mu;
    std::vector<int> grid;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    bool mu_pipeline = false;
    int workers = 0;  // 0: hardware concurrency
};

struct RunConfig {
    std::string preset;
    ProblemSpec problem;
    ForwardBlock forward;
    AsymptoteBlock asymptote;
    PipelineConfig inverse;
    StudyBlock study;

    void validate() const;
};

RunConfig preset_config(const std::string& name);

// Applies `key = value` lines grouped under [problem], [forward], [asymptote],
// [inverse] and [study] on top of `base`. `origin` names the source in errors.
RunConfig apply_config_text(RunConfig base, const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path, const std::string& preset);

nlohmann::json to_json(const RunConfig& cfg);

// Effective worker count: requested (0 = hardware) capped by AER_MAX_WORKERS.
int effective_workers(int requested);

}  // namespace aer
