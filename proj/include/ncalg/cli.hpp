#pragma once

#include <cstdint>
#include <string>

#include "ncalg/report.hpp"

namespace ncalg {

/// Fully determines a CLI run; identical configs produce byte-identical
/// reports and artifacts.
struct JobConfig {
    std::string command;
    std::uint64_t seed = 1;
    int dim = 2;
    std::string type = "A"; // toda system type
    int n = 3;              // system length / prefix count / soliton count
    int degree = 3;         // polynomial degree of random instance data
    int order1 = 6;         // truncation orders (second one ignored where 1-D)
    int order2 = 6;
    int tail_depth = 4;     // reliable negative orders for operator tails
    std::string alpha = "1";
    std::string amp = "1";
    double radius = 0.5;
    int grid_steps = 8;
    double tol = 1e-9;
    std::string out_report;
    std::string out_bundle;
    std::string out_csv;

    nlohmann::ordered_json to_json() const;
    static JobConfig from_json(const nlohmann::ordered_json& j, const JobConfig& defaults);
};

struct RunResult {
    int exit_code = 0; // 0 pass, 1 certificate failure, 2 degenerate, 3 config error
    Report report;
};

/// Execute one job: builds the seeded instance, runs every certificate for the
/// command, writes the report and artifacts atomically.
RunResult run_job(const JobConfig& config);

} // namespace ncalg
