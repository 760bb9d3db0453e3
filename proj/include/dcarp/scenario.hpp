#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcarp/init.hpp"
#include "dcarp/simulator.hpp"

namespace dcarp {

enum class Strategy { Restart, Transfer, ReturnFirst };

const char* to_string(Strategy s);
const char* to_string(SolverKind s);
Strategy strategy_from_string(const std::string& s);
SolverKind solver_from_string(const std::string& s);

struct ArmConfig {
    std::string name;
    Strategy strategy = Strategy::Restart;
    SolverKind solver = SolverKind::Memetic;
};

struct ScenarioConfig {
    std::string instance_path;
    int instances = 5;  // scenario length M
    int runs = 1;
    std::vector<ArmConfig> arms;
    EventConfig events;
    double budget_small_s = 60.0;
    double budget_large_s = 180.0;
    long long max_evals = 0;  // > 0 switches to deterministic eval budgets
    int large_threshold = 100;  // vertices above this use the large budget
    std::uint64_t master_seed = 1;
    std::string scenario_id;
    std::string csv_path;
    std::string report_path;
    int cap_band = 0;  // 0 off; 1..3 = low/mid/high remaining-capacity band
    int pop_size = 30;
    double p_ls = 0.2;
    int tournament = 2;
    int tabu_tenure = 10;
    int stagnation = 50;
    std::string baseline;  // arm name the report compares against
};

// `key : value` lines, '#' comments, `arm : <strategy> <solver> [name]`
// repeatable.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::string& path);
void validate_scenario_config(const ScenarioConfig& cfg);

struct LogRow {
    std::string scenario_id;
    int m = 0;
    std::string arm;
    int run = 0;
    std::uint64_t seed = 0;
    Cost cost = 0;
    long long wall_ms = 0;
    int feasible = 0;
};

struct ScenarioLog {
    std::vector<LogRow> rows;
};

void write_log_csv(const ScenarioLog& log, std::ostream& out);
ScenarioLog parse_log_csv(std::istream& in);

struct TransferContext {
    const Solution* prev_exec = nullptr;
    const DcarpInstance* prev_inst = nullptr;
};

struct GofvtResult {
    Solution exec;
    Cost cost = 0;  // equals the independently evaluated executable cost
    long long evals = 0;
};

// The four-step loop: virtual-task view, strategy-specific initialization,
// solve, convert back to an executable solution. The return-first strategy
// bypasses the view. Transfer requires a context.
GofvtResult gofvt_solve(const DcarpInstance& inst, Strategy strategy, SolverKind solver,
                        const SolverBudget& budget, const TransferContext* ctx = nullptr);

// Band splits: 1 -> [0, 0.33Q], 2 -> [0.34Q, 0.66Q], 3 -> [0.67Q, Q].
CapBand scenario_band(int band, Demand q);

// Runs the whole scenario chain; every row's solution is re-validated through
// serialization before logging. The chain advances once per step, driven by
// the single best solution across all arms and runs.
ScenarioLog run_scenario(const ScenarioConfig& cfg, std::ostream* progress = nullptr);

}  // namespace dcarp
