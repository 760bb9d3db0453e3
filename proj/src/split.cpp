#include "dcarp/split.hpp"

#include <algorithm>

namespace dcarp {

TaskSequence flatten(const Solution& s) {
    TaskSequence seq;
    for (const Route& r : s.routes) seq.insert(seq.end(), r.steps.begin(), r.steps.end());
    return seq;
}

SplitResult ulusoy_split(const TaskSequence& seq, const StaticView& view) {
    const DcarpInstance& inst = view.inst;
    const int depot = inst.depot();
    const Demand q = inst.capacity();
    const int n = static_cast<int>(seq.size());

    for (const TaskStep& st : seq)
        if (inst.tasks[static_cast<std::size_t>(st.task)].dm > q)
            throw InfeasibleError("task demand exceeds vehicle capacity; no split exists");

    const Cost inf = kInfCost;
    std::vector<Cost> dp(static_cast<std::size_t>(n) + 1, inf);
    std::vector<int> prev(static_cast<std::size_t>(n) + 1, -1);
    dp[0] = 0;
    for (int i = 0; i < n; ++i) {
        if (dp[static_cast<std::size_t>(i)] == inf) continue;
        Demand load = 0;
        // Cost of the open route serving seq[i..j-1], without the return leg.
        Cost open_cost = 0;
        int at = depot;
        for (int j = i + 1; j <= n; ++j) {
            const TaskStep st = seq[static_cast<std::size_t>(j - 1)];
            const Task& t = inst.tasks[static_cast<std::size_t>(st.task)];
            load += t.dm;
            if (load > q) break;
            open_cost = add_sat(open_cost, inst.mdc.at(at, step_entry(t, st.rev)));
            open_cost = add_sat(open_cost, t.sc);
            at = step_exit(t, st.rev);
            const Cost route = add_sat(open_cost, inst.mdc.at(at, depot));
            const Cost cand = add_sat(dp[static_cast<std::size_t>(i)], route);
            if (cand < dp[static_cast<std::size_t>(j)]) {
                dp[static_cast<std::size_t>(j)] = cand;
                prev[static_cast<std::size_t>(j)] = i;
            }
        }
    }
    if (dp[static_cast<std::size_t>(n)] == inf)
        throw InfeasibleError("no finite split of the task sequence exists");

    SplitResult res;
    res.cost = dp[static_cast<std::size_t>(n)];
    std::vector<std::pair<int, int>> blocks;
    for (int j = n; j > 0; j = prev[static_cast<std::size_t>(j)])
        blocks.emplace_back(prev[static_cast<std::size_t>(j)], j);
    std::reverse(blocks.begin(), blocks.end());
    for (auto [b, e] : blocks) {
        Route r{depot, {}};
        r.steps.assign(seq.begin() + b, seq.begin() + e);
        res.solution.routes.push_back(std::move(r));
    }
    return res;
}

namespace {

struct ScanCandidate {
    int task = -1;
    bool rev = false;
    Cost approach = kInfCost;
    Cost back = 0;   // mdc(exit, depot)
    Demand dm = 0;
    Cost sc = 0;
    int arc = -1;
    int entry = 0;
};

// true when a beats b under the rule's tie-break key.
bool rule_prefers(int rule, const ScanCandidate& a, const ScanCandidate& b, Demand load,
                  Demand q) {
    if (rule == 5) rule = (2 * load < q) ? 1 : 2;
    switch (rule) {
        case 1:
            if (a.back != b.back) return a.back > b.back;
            break;
        case 2:
            if (a.back != b.back) return a.back < b.back;
            break;
        case 3: {
            // dm/sc compared exactly by cross-multiplication.
            const auto lhs = a.dm * b.sc, rhs = b.dm * a.sc;
            if (lhs != rhs) return lhs > rhs;
            break;
        }
        case 4: {
            const auto lhs = a.dm * b.sc, rhs = b.dm * a.sc;
            if (lhs != rhs) return lhs < rhs;
            break;
        }
        default:
            throw DcarpError("path scanning rule must be 1..5");
    }
    if (a.arc != b.arc) return a.arc < b.arc;
    return a.task < b.task;
}

}  // namespace

Solution path_scanning(const StaticView& view, int rule) {
    if (rule < 1 || rule > 5) throw DcarpError("path scanning rule must be 1..5");
    const DcarpInstance& inst = view.inst;
    const int depot = inst.depot();
    const Demand q = inst.capacity();

    std::vector<char> left(inst.tasks.size(), 1);
    int remaining = static_cast<int>(inst.tasks.size());
    for (std::size_t i = 0; i < inst.tasks.size(); ++i)
        if (inst.tasks[i].dm > q)
            throw InfeasibleError("task demand exceeds vehicle capacity");

    Solution sol;
    while (remaining > 0) {
        Route r{depot, {}};
        Demand load = 0;
        int at = depot;
        while (true) {
            ScanCandidate best;
            bool found = false;
            for (int i = 0; i < static_cast<int>(inst.tasks.size()); ++i) {
                if (!left[static_cast<std::size_t>(i)]) continue;
                const Task& t = inst.tasks[static_cast<std::size_t>(i)];
                if (load + t.dm > q) continue;
                // Direction is fixed per task first: minimal approach leg,
                // ties to the lower entry vertex.
                ScanCandidate c;
                c.task = i;
                c.approach = kInfCost;
                const int ndirs = t.is_virtual() ? 1 : 2;
                for (int d = 0; d < ndirs; ++d) {
                    const bool rev = d == 1;
                    const Cost approach = inst.mdc.at(at, step_entry(t, rev));
                    if (approach < c.approach ||
                        (approach == c.approach && approach != kInfCost &&
                         step_entry(t, rev) < c.entry)) {
                        c.rev = rev;
                        c.approach = approach;
                        c.entry = step_entry(t, rev);
                    }
                }
                if (c.approach == kInfCost) continue;
                c.back = inst.mdc.at(step_exit(t, c.rev), depot);
                c.dm = t.dm;
                c.sc = t.sc;
                c.arc = t.arc;
                if (!found || c.approach < best.approach ||
                    (c.approach == best.approach && rule_prefers(rule, c, best, load, q))) {
                    best = c;
                    found = true;
                }
            }
            if (!found) break;
            r.steps.push_back({best.task, best.rev});
            left[static_cast<std::size_t>(best.task)] = 0;
            --remaining;
            load += best.dm;
            at = step_exit(inst.tasks[static_cast<std::size_t>(best.task)], best.rev);
        }
        if (r.steps.empty())
            throw InfeasibleError("a task is unreachable from the depot");
        sol.routes.push_back(std::move(r));
    }
    return sol;
}

}  // namespace dcarp
