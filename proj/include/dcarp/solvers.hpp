#pragma once

#include <vector>

#include "dcarp/rng.hpp"
#include "dcarp/split.hpp"

namespace dcarp {

// Search budget. max_evals > 0 switches to a deterministic evaluation-count
// budget and the time limit is ignored; one evaluation = one split or one
// local-search call (memetic) or one applied move (descent).
struct SolverBudget {
    double time_limit_s = 60.0;
    long long max_evals = 0;
    std::uint64_t seed = 1;
    int pop_size = 30;
    double p_ls = 0.2;
    int tournament = 2;
    int tabu_tenure = 10;
    int stagnation = 50;
};

struct SolveOutcome {
    Solution best;        // static-view solution, virtual tasks included
    Cost best_cost = 0;   // raw static-view cost
    Cost best_adjusted = 0;
    long long evals = 0;
    double elapsed_s = 0.0;
};

// Steady-state memetic search over task sequences: binary tournament, order
// crossover keeping each step's direction, optimal split, probabilistic local
// search, duplicate-phenotype rejection, replace-worst survival. The
// incumbent never worsens. Requires at least one initial solution.
SolveOutcome memetic_solve(const StaticView& view, const std::vector<Solution>& initial,
                           const SolverBudget& budget);

// Tabu-descent search: applies the best admissible move each iteration
// (worsening allowed), tabu on touched tasks for `tabu_tenure` iterations
// with incumbent aspiration, and restarts from a perturbed incumbent after
// `stagnation` non-improving iterations. The incumbent never worsens.
SolveOutcome descent_solve(const StaticView& view, const Solution& initial,
                           const SolverBudget& budget);

}  // namespace dcarp
