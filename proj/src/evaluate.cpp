#include "dcarp/evaluate.hpp"

#include <algorithm>

namespace dcarp {

namespace {

Cost leg(const DcarpInstance& inst, int from, int to) { return inst.mdc.at(from, to); }

template <typename OnBadLeg>
Cost route_cost_impl(const Route& r, const DcarpInstance& inst, OnBadLeg on_bad) {
    Cost total = 0;
    int at = r.start;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const Task& t = inst.tasks[static_cast<std::size_t>(r.steps[i].task)];
        const int in = step_entry(t, r.steps[i].rev);
        const Cost approach = leg(inst, at, in);
        if (approach == kInfCost) return on_bad(at, in);
        total = add_sat(total, approach);
        total = add_sat(total, t.sc);
        at = step_exit(t, r.steps[i].rev);
    }
    const Cost home = leg(inst, at, inst.depot());
    if (home == kInfCost) return on_bad(at, inst.depot());
    return add_sat(total, home);
}

}  // namespace

Cost route_cost_sat(const Route& r, const DcarpInstance& inst) {
    return route_cost_impl(r, inst, [](int, int) { return kInfCost; });
}

Cost route_cost(const Route& r, const DcarpInstance& inst) {
    return route_cost_impl(r, inst, [](int from, int to) -> Cost {
        throw InfeasibleError("unreachable leg from vertex " + std::to_string(from) +
                              " to vertex " + std::to_string(to));
    });
}

Cost total_cost_sat(const Solution& s, const DcarpInstance& inst) {
    Cost total = 0;
    for (const Route& r : s.routes) total = add_sat(total, route_cost_sat(r, inst));
    return total;
}

Cost total_cost(const Solution& s, const DcarpInstance& inst) {
    Cost total = 0;
    for (const Route& r : s.routes) total = add_sat(total, route_cost(r, inst));
    return total;
}

Demand route_demand(const Route& r, const DcarpInstance& inst) {
    Demand d = 0;
    for (const TaskStep& s : r.steps) d += inst.tasks[static_cast<std::size_t>(s.task)].dm;
    return d;
}

FeasibilityReport check_feasibility(const Solution& s, const DcarpInstance& inst) {
    FeasibilityReport rep;
    const int n_ov = static_cast<int>(inst.outside.size());
    std::vector<int> seen(inst.tasks.size(), 0);

    for (int k = 0; k < static_cast<int>(s.routes.size()); ++k) {
        const Route& r = s.routes[static_cast<std::size_t>(k)];
        const bool is_outside = k < n_ov;
        const int want_start =
            is_outside ? inst.outside[static_cast<std::size_t>(k)].stop_vertex : inst.depot();
        if (r.start != want_start)
            rep.violations.push_back(
                {Violation::StartMismatch,
                 "route " + std::to_string(k) + " starts at vertex " + std::to_string(r.start) +
                     ", expected " + std::to_string(want_start)});

        Demand load = 0;
        int at = r.start;
        for (const TaskStep& st : r.steps) {
            if (st.task < 0 || st.task >= static_cast<int>(inst.tasks.size())) {
                rep.violations.push_back(
                    {Violation::UnknownTask, "route " + std::to_string(k) +
                                                 " references unknown task " +
                                                 std::to_string(st.task)});
                continue;
            }
            const Task& t = inst.tasks[static_cast<std::size_t>(st.task)];
            if (st.rev && t.is_virtual())
                rep.violations.push_back(
                    {Violation::ReversedVirtual,
                     "virtual task of vehicle " + std::to_string(t.owner) + " served reversed"});
            ++seen[static_cast<std::size_t>(st.task)];
            load += t.dm;
            const int in = step_entry(t, st.rev);
            if (inst.mdc.at(at, in) == kInfCost)
                rep.violations.push_back(
                    {Violation::UnreachableLeg, "route " + std::to_string(k) +
                                                    ": no path from vertex " +
                                                    std::to_string(at) + " to vertex " +
                                                    std::to_string(in)});
            at = step_exit(t, st.rev);
        }
        if (inst.mdc.at(at, inst.depot()) == kInfCost)
            rep.violations.push_back({Violation::UnreachableLeg,
                                      "route " + std::to_string(k) + ": no path from vertex " +
                                          std::to_string(at) + " back to the depot"});

        const Demand cap = is_outside
                               ? inst.outside[static_cast<std::size_t>(k)].remaining_capacity
                               : inst.capacity();
        if (load > cap)
            rep.violations.push_back(
                {Violation::CapacityExceeded,
                 "route " + std::to_string(k) + " demand " + std::to_string(load) +
                     " exceeds capacity " + std::to_string(cap) +
                     (is_outside ? " of outside vehicle " + std::to_string(k) : "")});
    }

    for (int k = static_cast<int>(s.routes.size()); k < n_ov; ++k)
        rep.violations.push_back({Violation::StartMismatch,
                                  "missing route for outside vehicle " + std::to_string(k)});

    for (std::size_t t = 0; t < inst.tasks.size(); ++t) {
        if (seen[t] == 0)
            rep.violations.push_back(
                {Violation::MissingTask, "task " + std::to_string(t) + " is not served"});
        else if (seen[t] > 1)
            rep.violations.push_back(
                {Violation::DuplicateTask, "task " + std::to_string(t) + " served " +
                                               std::to_string(seen[t]) + " times"});
    }
    return rep;
}

}  // namespace dcarp
