#include "dcarp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "dcarp/evaluate.hpp"
#include "dcarp/local_search.hpp"
#include "dcarp/vt.hpp"

namespace dcarp {

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetClock {
    double time_limit_s;
    long long max_evals;
    Clock::time_point t0 = Clock::now();
    long long evals = 0;

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
    bool exhausted() const {
        if (max_evals > 0) return evals >= max_evals;
        return elapsed() >= time_limit_s;
    }
};

// Route-order-independent solution identity: signed step encodings per
// route, routes sorted.
using Phenotype = std::vector<std::vector<int>>;

Phenotype phenotype(const Solution& s) {
    Phenotype p;
    for (const Route& r : s.routes) {
        if (r.steps.empty()) continue;
        std::vector<int> enc;
        enc.reserve(r.steps.size());
        for (const TaskStep& st : r.steps) enc.push_back(st.rev ? -(st.task + 1) : st.task + 1);
        p.push_back(std::move(enc));
    }
    std::sort(p.begin(), p.end());
    return p;
}

struct Individual {
    Solution sol;
    Cost cost = 0;
    Phenotype pheno;
};

// Order crossover on flattened sequences. The slice [i, j] comes from a, the
// rest is filled cyclically from b starting after j; each step keeps the
// direction it had in its source parent.
TaskSequence order_crossover(const TaskSequence& a, const TaskSequence& b, Rng& rng) {
    const int n = static_cast<int>(a.size());
    if (n <= 1) return a;
    int i = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    if (i > j) std::swap(i, j);
    TaskSequence child(static_cast<std::size_t>(n));
    std::vector<char> used(a.size() + b.size(), 0);
    auto mark = [&](int task) { used[static_cast<std::size_t>(task)] = 1; };
    auto is_used = [&](int task) { return used[static_cast<std::size_t>(task)] != 0; };
    for (int k = i; k <= j; ++k) {
        child[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)];
        mark(a[static_cast<std::size_t>(k)].task);
    }
    int pos = (j + 1) % n;
    for (int k = 0; k < n; ++k) {
        const TaskStep& st = b[static_cast<std::size_t>((j + 1 + k) % n)];
        if (is_used(st.task)) continue;
        child[static_cast<std::size_t>(pos)] = st;
        mark(st.task);
        pos = (pos + 1) % n;
    }
    return child;
}

SolveOutcome finish(const StaticView& view, Solution best, Cost best_cost,
                    const BudgetClock& clock) {
    SolveOutcome out;
    out.best = std::move(best);
    out.best_cost = best_cost;
    out.best_adjusted = best_cost == kInfCost ? kInfCost : best_cost - view.adjustment;
    out.evals = clock.evals;
    out.elapsed_s = clock.elapsed();
    return out;
}

}  // namespace

SolveOutcome memetic_solve(const StaticView& view, const std::vector<Solution>& initial,
                           const SolverBudget& budget) {
    if (initial.empty()) throw DcarpError("memetic_solve requires an initial population");
    BudgetClock clock{budget.time_limit_s, budget.max_evals};
    Rng rng(budget.seed);

    std::vector<Individual> pop;
    Solution best;
    Cost best_cost = kInfCost;
    auto note_best = [&](const Individual& ind) {
        if (ind.cost < best_cost) {
            best = ind.sol;
            best_cost = ind.cost;
        }
    };
    auto has_pheno = [&](const Phenotype& p) {
        for (const Individual& ind : pop)
            if (ind.pheno == p) return true;
        return false;
    };

    for (const Solution& s : initial) {
        if (clock.exhausted() && !pop.empty()) break;
        Individual ind;
        ind.sol = s;
        ind.cost = total_cost_sat(s, view.inst);
        ind.pheno = phenotype(s);
        ++clock.evals;
        note_best(ind);
        if (!has_pheno(ind.pheno) && static_cast<int>(pop.size()) < budget.pop_size)
            pop.push_back(std::move(ind));
    }
    if (pop.empty()) throw DcarpError("memetic_solve: all initial solutions were duplicates");

    const int n_tasks = static_cast<int>(view.inst.tasks.size());
    if (n_tasks == 0) return finish(view, best, best_cost, clock);

    auto tournament = [&]() -> const Individual& {
        int winner = static_cast<int>(rng.uniform_below(pop.size()));
        for (int k = 1; k < budget.tournament; ++k) {
            const int c = static_cast<int>(rng.uniform_below(pop.size()));
            if (pop[static_cast<std::size_t>(c)].cost <
                pop[static_cast<std::size_t>(winner)].cost)
                winner = c;
        }
        return pop[static_cast<std::size_t>(winner)];
    };

    while (!clock.exhausted()) {
        const TaskSequence pa = flatten(tournament().sol);
        const TaskSequence pb = flatten(tournament().sol);
        const TaskSequence seq = order_crossover(pa, pb, rng);

        SplitResult split = ulusoy_split(seq, view);
        ++clock.evals;
        Individual child;
        child.sol = std::move(split.solution);
        child.cost = split.cost;

        if (!clock.exhausted() && rng.chance(budget.p_ls)) {
            child.sol = local_search(child.sol, view);
            child.cost = total_cost_sat(child.sol, view.inst);
            ++clock.evals;
        }
        child.pheno = phenotype(child.sol);
        note_best(child);

        if (has_pheno(child.pheno)) continue;
        if (static_cast<int>(pop.size()) < budget.pop_size) {
            pop.push_back(std::move(child));
            continue;
        }
        std::size_t worst = 0;
        for (std::size_t k = 1; k < pop.size(); ++k)
            if (pop[k].cost > pop[worst].cost) worst = k;
        if (child.cost < pop[worst].cost) pop[worst] = std::move(child);
    }
    return finish(view, best, best_cost, clock);
}

SolveOutcome descent_solve(const StaticView& view, const Solution& initial,
                           const SolverBudget& budget) {
    BudgetClock clock{budget.time_limit_s, budget.max_evals};
    Rng rng(budget.seed);

    Neighborhood nb(view);
    nb.load(initial);
    Solution best = nb.extract();
    Cost best_cost = nb.total();

    const std::size_t n_tasks = view.inst.tasks.size();
    std::vector<long long> tabu_until(n_tasks, 0);

    // Three random capacity-respecting relocations applied to a copy of the
    // incumbent; direction re-randomized for real tasks.
    auto perturb = [&](const Solution& base) {
        Solution s = base;
        for (int k = 0; k < 3; ++k) {
            for (int attempt = 0; attempt < 20; ++attempt) {
                std::vector<int> nonempty;
                for (int r = 0; r < static_cast<int>(s.routes.size()); ++r)
                    if (!s.routes[static_cast<std::size_t>(r)].steps.empty()) nonempty.push_back(r);
                if (nonempty.empty()) return s;
                const int r1 = nonempty[static_cast<std::size_t>(rng.uniform_below(nonempty.size()))];
                auto& src = s.routes[static_cast<std::size_t>(r1)].steps;
                const int i = static_cast<int>(rng.uniform_below(src.size()));
                TaskStep st = src[static_cast<std::size_t>(i)];
                const Task& t = view.inst.tasks[static_cast<std::size_t>(st.task)];
                if (!t.is_virtual() && rng.chance(0.5)) st.rev = !st.rev;
                const int r2 = static_cast<int>(rng.uniform_below(s.routes.size() + 1));
                if (r2 == static_cast<int>(s.routes.size())) {
                    if (t.dm > view.inst.capacity()) continue;
                    src.erase(src.begin() + i);
                    s.routes.push_back({view.inst.depot(), {st}});
                    break;
                }
                auto& dst = s.routes[static_cast<std::size_t>(r2)].steps;
                Demand load = t.dm;
                for (const TaskStep& o : dst)
                    load += view.inst.tasks[static_cast<std::size_t>(o.task)].dm;
                if (r2 != r1 && load > view.inst.capacity()) continue;
                const int j = static_cast<int>(
                    rng.uniform_below(dst.size() + (r2 == r1 ? 0 : 1)));
                src.erase(src.begin() + i);
                dst.insert(dst.begin() + std::min<std::size_t>(static_cast<std::size_t>(j),
                                                               dst.size()),
                           st);
                break;
            }
        }
        return s;
    };

    long long iter = 0;
    int non_improving = 0;
    bool just_perturbed = false;
    while (!clock.exhausted()) {
        Move m;
        if (!nb.best_move(m, false, &tabu_until, iter, best_cost)) {
            if (just_perturbed) break;
            nb.load(perturb(best));
            std::fill(tabu_until.begin(), tabu_until.end(), 0);
            non_improving = 0;
            just_perturbed = true;
            continue;
        }
        just_perturbed = false;
        nb.apply(m);
        ++clock.evals;
        ++iter;
        for (int t : m.touched)
            tabu_until[static_cast<std::size_t>(t)] = iter + budget.tabu_tenure;
        if (nb.total() < best_cost) {
            best_cost = nb.total();
            best = nb.extract();
            non_improving = 0;
        } else if (++non_improving >= budget.stagnation) {
            nb.load(perturb(best));
            std::fill(tabu_until.begin(), tabu_until.end(), 0);
            non_improving = 0;
        }
    }
    return finish(view, std::move(best), best_cost, clock);
}

}  // namespace dcarp
