#pragma once

#include <vector>

#include "dcarp/rng.hpp"
#include "dcarp/solvers.hpp"
#include "dcarp/vt.hpp"

namespace dcarp {

enum class SolverKind { Memetic, Descent };

// Restart initialization: min(5, count - 1) path-scanning rules, then random
// permutations with random directions, each split optimally. Always returns
// exactly `count` solutions.
std::vector<Solution> restart_init(const StaticView& view, int count, Rng& rng);

// Sequence transfer: rebuilds a flattened sequence from the previous
// executable solution, substituting each outside vehicle's virtual task at
// the head of its source route, keeping surviving tasks in order and
// direction, greedily inserting unmapped virtual tasks and new tasks, then
// splitting optimally.
Solution sequence_transfer(const Solution& prev_exec_best, const DcarpInstance& prev_inst,
                           const StaticView& cur_view);

struct ReturnFirstResult {
    Solution exec;  // executable on the original instance
    Cost cost = 0;  // totals the outside vehicles' returns plus the fresh solve
    long long evals = 0;
    double elapsed_s = 0.0;
};

// Return-first baseline: every outside vehicle returns to the depot empty,
// then the task set is solved from scratch with full-capacity vehicles.
ReturnFirstResult return_first_solve(const DcarpInstance& inst, SolverKind solver,
                                     const SolverBudget& budget);

Cost return_first_cost(const DcarpInstance& inst, const SolverBudget& budget);

}  // namespace dcarp
