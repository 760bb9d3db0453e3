#include "dcarp/init.hpp"

#include <algorithm>
#include <unordered_map>

#include "dcarp/evaluate.hpp"

namespace dcarp {

namespace {

// Cheapest insertion of one task into a flattened sequence, treating the
// sequence as a single depot-to-depot tour. Ties keep the earliest position
// and the forward direction. Position 0 is always finite, so this never
// fails for a depot-connected task.
void greedy_insert(TaskSequence& seq, int task, bool allow_rev, const StaticView& view) {
    const DcarpInstance& inst = view.inst;
    const Task& t = inst.tasks[static_cast<std::size_t>(task)];
    const int depot = inst.depot();
    Cost best = kInfCost;
    std::size_t best_pos = 0;
    bool best_rev = false;
    for (std::size_t p = 0; p <= seq.size(); ++p) {
        const int prev_exit =
            p == 0 ? depot : step_exit(inst.tasks[static_cast<std::size_t>(seq[p - 1].task)],
                                       seq[p - 1].rev);
        const int next_entry =
            p == seq.size() ? depot
                            : step_entry(inst.tasks[static_cast<std::size_t>(seq[p].task)],
                                         seq[p].rev);
        const Cost base = inst.mdc.at(prev_exit, next_entry);
        for (int d = 0; d < (allow_rev ? 2 : 1); ++d) {
            const bool rev = d == 1;
            Cost delta = add_sat(inst.mdc.at(prev_exit, step_entry(t, rev)), t.sc);
            delta = add_sat(delta, inst.mdc.at(step_exit(t, rev), next_entry));
            if (delta == kInfCost) continue;
            if (base != kInfCost) delta -= base;
            if (delta < best) {
                best = delta;
                best_pos = p;
                best_rev = rev;
            }
        }
    }
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best_pos), {task, best_rev});
}

}  // namespace

std::vector<Solution> restart_init(const StaticView& view, int count, Rng& rng) {
    if (count <= 0) throw DcarpError("restart_init requires count >= 1");
    std::vector<Solution> out;
    out.reserve(static_cast<std::size_t>(count));
    const int n_ps = std::min(5, count - 1);
    for (int rule = 1; rule <= n_ps; ++rule) out.push_back(path_scanning(view, rule));

    TaskSequence base;
    for (int t = 0; t < static_cast<int>(view.inst.tasks.size()); ++t)
        base.push_back({t, false});
    while (static_cast<int>(out.size()) < count) {
        TaskSequence seq = base;
        rng.shuffle(seq);
        for (TaskStep& st : seq)
            if (!view.inst.tasks[static_cast<std::size_t>(st.task)].is_virtual())
                st.rev = rng.chance(0.5);
        out.push_back(ulusoy_split(seq, view).solution);
    }
    return out;
}

Solution sequence_transfer(const Solution& prev_exec_best, const DcarpInstance& prev_inst,
                           const StaticView& cur_view) {
    const DcarpInstance& cur = cur_view.inst;
    // The view strips inst.outside; the vehicles live in source_outside.
    const std::vector<OutsideVehicle>& ovs = cur_view.source_outside;

    // Forward arc id -> current real task index.
    std::unordered_map<int, int> by_arc;
    for (int t = 0; t < cur_view.num_real; ++t)
        by_arc.emplace(cur.tasks[static_cast<std::size_t>(t)].arc, t);

    std::vector<char> placed(cur.tasks.size(), 0);
    TaskSequence seq;
    const int n_routes = static_cast<int>(prev_exec_best.routes.size());
    for (int r = 0; r < n_routes; ++r) {
        for (int k = 0; k < static_cast<int>(ovs.size()); ++k)
            if (ovs[static_cast<std::size_t>(k)].source_route == r) {
                const int vt = cur_view.virtual_task(k);
                seq.push_back({vt, false});
                placed[static_cast<std::size_t>(vt)] = 1;
            }
        for (const TaskStep& st : prev_exec_best.routes[static_cast<std::size_t>(r)].steps) {
            const Task& pt = prev_inst.tasks[static_cast<std::size_t>(st.task)];
            const auto it = by_arc.find(pt.arc);
            if (it == by_arc.end()) continue;
            seq.push_back({it->second, st.rev});
            placed[static_cast<std::size_t>(it->second)] = 1;
        }
    }

    // Virtual tasks whose source route is unknown, then tasks new to this
    // instance, each by cheapest insertion.
    for (int k = 0; k < static_cast<int>(ovs.size()); ++k) {
        const int vt = cur_view.virtual_task(k);
        if (placed[static_cast<std::size_t>(vt)]) continue;
        greedy_insert(seq, vt, false, cur_view);
        placed[static_cast<std::size_t>(vt)] = 1;
    }
    for (int t = 0; t < cur_view.num_real; ++t) {
        if (placed[static_cast<std::size_t>(t)]) continue;
        greedy_insert(seq, t, true, cur_view);
        placed[static_cast<std::size_t>(t)] = 1;
    }
    return ulusoy_split(seq, cur_view).solution;
}

ReturnFirstResult return_first_solve(const DcarpInstance& inst, SolverKind solver,
                                     const SolverBudget& budget) {
    DcarpInstance stripped = inst;
    stripped.outside.clear();
    const StaticView view = build_static_view(stripped);

    Rng init_rng(derive_seed(budget.seed, 0xA11C));
    SolveOutcome out;
    if (solver == SolverKind::Memetic) {
        out = memetic_solve(view, restart_init(view, budget.pop_size, init_rng), budget);
    } else {
        out = descent_solve(view, restart_init(view, 1, init_rng)[0], budget);
    }

    ReturnFirstResult res;
    res.evals = out.evals;
    res.elapsed_s = out.elapsed_s;
    res.cost = out.best_cost;
    for (const OutsideVehicle& ov : inst.outside) {
        res.exec.routes.push_back({ov.stop_vertex, {}});
        res.cost = add_sat(res.cost, inst.mdc.at(ov.stop_vertex, inst.network.depot));
    }
    for (const Route& r : out.best.routes) res.exec.routes.push_back(r);
    return res;
}

Cost return_first_cost(const DcarpInstance& inst, const SolverBudget& budget) {
    return return_first_solve(inst, SolverKind::Memetic, budget).cost;
}

}  // namespace dcarp
