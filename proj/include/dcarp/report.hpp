#pragma once

#include <string>
#include <vector>

#include "dcarp/scenario.hpp"

namespace dcarp {

// Aggregates for one (instance index, arm) cell; infeasible rows count as
// fails and stay out of the statistics.
struct ArmSummary {
    int m = 0;
    std::string arm;
    int n = 0;
    int fails = 0;
    Cost sum = 0;  // exact, for mean comparisons
    double mean = 0.0;
    double std_dev = 0.0;  // population
    Cost min = 0;
};

struct WdlRow {
    std::string arm;
    int wins = 0, draws = 0, losses = 0;
};

struct Report {
    std::string baseline;
    std::vector<ArmSummary> cells;  // by m, then arm appearance order
    std::vector<WdlRow> wdl;        // every arm vs the baseline, lower mean wins
};

// Empty baseline picks the first arm in the log. Mean comparisons are exact
// (integer cross-multiplication), so draws are true ties.
Report build_report(const ScenarioLog& log, const std::string& baseline = "");

std::string report_text(const Report& r);
std::string report_csv(const Report& r);
std::string report_json(const Report& r);

}  // namespace dcarp
