#include <algorithm>

#include "doctest.h"
#include "dcarp/init.hpp"
#include "dcarp/local_search.hpp"
#include "dcarp/solvers.hpp"
#include "test_util.hpp"

using namespace dcarp;
using namespace testutil;

namespace {

void check_view_feasible(const Solution& s, const StaticView& view) {
    const FeasibilityReport rep = check_feasibility(s, view.inst);
    REQUIRE_MESSAGE(rep.feasible(),
                    (rep.violations.empty() ? std::string{} : rep.violations.front().message));
}

}  // namespace

TEST_CASE("local search never worsens and lands on a local optimum") {
    Rng rng(662);
    for (int it = 0; it < 25; ++it) {
        RandomInstanceOpts opts;
        opts.max_outside = 2;
        opts.allow_states = it % 2 == 1;
        const DcarpInstance inst = random_instance(rng, opts);
        const StaticView view = build_static_view(inst);
        const Solution start = random_view_solution(view, rng);
        const Cost before = total_cost(start, view.inst);
        const Solution opt = local_search(start, view);
        const Cost after = total_cost(opt, view.inst);
        CHECK(after <= before);
        check_view_feasible(opt, view);

        Neighborhood nb(view);
        nb.load(opt);
        Move m;
        CHECK(!nb.best_move(m, true));
    }
}

TEST_CASE("applied moves recost exactly") {
    Rng rng(17);
    for (int it = 0; it < 20; ++it) {
        RandomInstanceOpts opts;
        opts.max_outside = 2;
        const DcarpInstance inst = random_instance(rng, opts);
        const StaticView view = build_static_view(inst);
        Neighborhood nb(view);
        nb.load(random_view_solution(view, rng));
        for (int step = 0; step < 12; ++step) {
            Move m;
            if (!nb.best_move(m, false)) break;
            const Cost predicted = nb.total() + m.delta;
            nb.apply(m);
            CHECK(nb.total() == predicted);
            const Solution s = nb.extract();
            CHECK(total_cost(s, view.inst) == predicted);
            check_view_feasible(s, view);
        }
    }
}

TEST_CASE("local search repairs a bad split of the diamond") {
    const DcarpInstance inst = diamond();
    const StaticView view = build_static_view(inst);
    const Solution bad{{Route{1, {{0, false}, {1, false}}}, Route{1, {{2, false}}}}};
    CHECK(total_cost(bad, view.inst) == 22);
    const Solution out = local_search(bad, view);
    CHECK(total_cost(out, view.inst) == 18);
}

TEST_CASE("move cap stops the descent early") {
    Rng rng(5150);
    RandomInstanceOpts opts;
    opts.nv = 10;
    opts.extra_edges = 9;
    opts.task_frac = 0.9;
    const DcarpInstance inst = random_instance(rng, opts);
    const StaticView view = build_static_view(inst);
    const Solution start = random_view_solution(view, rng);
    long long full_moves = 0;
    LsLimits full{-1, &full_moves};
    local_search(start, view, full);
    if (full_moves < 2) return;  // already near-optimal start, nothing to cap
    long long capped_moves = 0;
    LsLimits capped{1, &capped_moves};
    const Solution one = local_search(start, view, capped);
    CHECK(capped_moves == 1);
    CHECK(total_cost(one, view.inst) < total_cost(start, view.inst));
}

TEST_CASE("memetic finds the diamond optimum") {
    const DcarpInstance inst = diamond();
    const StaticView view = build_static_view(inst);
    SolverBudget budget;
    budget.max_evals = 400;
    budget.seed = 5;
    budget.pop_size = 10;
    Rng rng(derive_seed(budget.seed, 0xF00D));
    const SolveOutcome out = memetic_solve(view, restart_init(view, budget.pop_size, rng), budget);
    CHECK(out.best_cost == 18);
    CHECK(out.best_adjusted == 18);
    CHECK(out.evals <= 400);
    check_view_feasible(out.best, view);
}

TEST_CASE("descent finds the diamond optimum") {
    const DcarpInstance inst = diamond();
    const StaticView view = build_static_view(inst);
    SolverBudget budget;
    budget.max_evals = 300;
    budget.seed = 5;
    Rng rng(derive_seed(budget.seed, 0xF00D));
    const auto init = restart_init(view, 1, rng);
    const SolveOutcome out = descent_solve(view, init[0], budget);
    CHECK(out.best_cost == 18);
    check_view_feasible(out.best, view);
}

TEST_CASE("solvers on the outside-vehicle fixture adjust costs") {
    const DcarpInstance inst = diamond_with_ov();
    const StaticView view = build_static_view(inst);
    SolverBudget budget;
    budget.max_evals = 400;
    budget.seed = 9;
    budget.pop_size = 8;
    Rng rng(derive_seed(budget.seed, 1));
    const SolveOutcome mem = memetic_solve(view, restart_init(view, 8, rng), budget);
    CHECK(mem.best_cost == 15);
    CHECK(mem.best_adjusted == 11);
    const SolveOutcome des = descent_solve(view, restart_init(view, 1, rng)[0], budget);
    CHECK(des.best_adjusted == 11);
}

TEST_CASE("solver runs are reproducible under an evaluation budget") {
    Rng rng(321);
    RandomInstanceOpts opts;
    opts.nv = 9;
    opts.max_outside = 2;
    const DcarpInstance inst = random_instance(rng, opts);
    const StaticView view = build_static_view(inst);

    SolverBudget budget;
    budget.max_evals = 600;
    budget.seed = 77;
    budget.pop_size = 12;

    auto run_mem = [&] {
        Rng r(derive_seed(budget.seed, 2));
        return memetic_solve(view, restart_init(view, budget.pop_size, r), budget);
    };
    const SolveOutcome a = run_mem();
    const SolveOutcome b = run_mem();
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.evals == b.evals);
    CHECK(a.best == b.best);

    auto run_des = [&] {
        Rng r(derive_seed(budget.seed, 3));
        return descent_solve(view, restart_init(view, 1, r)[0], budget);
    };
    const SolveOutcome c = run_des();
    const SolveOutcome d = run_des();
    CHECK(c.best_cost == d.best_cost);
    CHECK(c.best == d.best);
}

TEST_CASE("incumbents never worsen as the budget grows") {
    Rng rng(888);
    RandomInstanceOpts opts;
    opts.nv = 8;
    const DcarpInstance inst = random_instance(rng, opts);
    const StaticView view = build_static_view(inst);
    SolverBudget budget;
    budget.seed = 4;
    budget.pop_size = 10;
    Cost prev = kInfCost;
    for (long long evals : {50LL, 200LL, 800LL}) {
        budget.max_evals = evals;
        Rng r(derive_seed(budget.seed, 7));
        const SolveOutcome out =
            memetic_solve(view, restart_init(view, budget.pop_size, r), budget);
        CHECK(out.best_cost <= prev);
        prev = out.best_cost;
    }
}

TEST_CASE("memetic requires an initial population") {
    const DcarpInstance inst = diamond();
    const StaticView view = build_static_view(inst);
    SolverBudget budget;
    budget.max_evals = 10;
    CHECK_THROWS_AS(memetic_solve(view, {}, budget), DcarpError);
}

TEST_CASE("solving an instance with no tasks returns an empty plan") {
    DcarpInstance inst = diamond();
    for (Arc& a : inst.network.arcs) a.dm = 0;
    rebuild_instance(inst);
    const StaticView view = build_static_view(inst);
    SolverBudget budget;
    budget.max_evals = 10;
    Rng rng(1);
    const SolveOutcome out = memetic_solve(view, restart_init(view, 4, rng), budget);
    CHECK(out.best_cost == 0);
    CHECK(out.best.routes.empty());
}
