#include "dcarp/vt.hpp"

#include <algorithm>

namespace dcarp {

StaticView build_static_view(const DcarpInstance& inst) {
    StaticView view;
    view.inst = inst;
    view.source_outside = inst.outside;
    view.inst.outside.clear();
    view.num_real = static_cast<int>(inst.tasks.size());
    view.num_virtual = static_cast<int>(inst.outside.size());
    for (int k = 0; k < view.num_virtual; ++k) {
        const OutsideVehicle& ov = inst.outside[static_cast<std::size_t>(k)];
        const Cost home = inst.mdc.at(inst.depot(), ov.stop_vertex);
        if (home == kInfCost)
            throw InfeasibleError("stop vertex " + std::to_string(ov.stop_vertex) +
                                  " of outside vehicle " + std::to_string(k) +
                                  " is unreachable from the depot");
        Task vt;
        vt.entry = inst.depot();
        vt.exit = ov.stop_vertex;
        vt.dm = inst.capacity() - ov.remaining_capacity;
        vt.sc = home;
        vt.owner = k;
        view.inst.tasks.push_back(vt);
        view.adjustment += home;
    }
    return view;
}

namespace {

int count_virtual(const Solution& s, const StaticView& view, std::vector<int>& seen) {
    seen.assign(static_cast<std::size_t>(view.num_virtual), 0);
    int total = 0;
    for (const Route& r : s.routes)
        for (const TaskStep& st : r.steps) {
            const Task& t = view.inst.tasks[static_cast<std::size_t>(st.task)];
            if (t.is_virtual()) {
                ++seen[static_cast<std::size_t>(t.owner)];
                ++total;
            }
        }
    return total;
}

void require_all_virtual(const Solution& s, const StaticView& view) {
    std::vector<int> seen;
    count_virtual(s, view, seen);
    for (int k = 0; k < view.num_virtual; ++k) {
        if (seen[static_cast<std::size_t>(k)] == 0)
            throw InfeasibleError("virtual task of outside vehicle " + std::to_string(k) +
                                  " is not served");
        if (seen[static_cast<std::size_t>(k)] > 1)
            throw InfeasibleError("virtual task of outside vehicle " + std::to_string(k) +
                                  " served more than once");
    }
}

}  // namespace

Cost adjusted_cost(const Solution& s, const StaticView& view) {
    require_all_virtual(s, view);
    return total_cost(s, view.inst) - view.adjustment;
}

Cost adjusted_cost_sat(const Solution& s, const StaticView& view) {
    require_all_virtual(s, view);
    const Cost raw = total_cost_sat(s, view.inst);
    return raw == kInfCost ? kInfCost : raw - view.adjustment;
}

Solution normalize_virtual_routes(const Solution& s, const StaticView& view) {
    Solution out;
    for (const Route& r : s.routes) {
        Route cur{r.start, {}};
        for (const TaskStep& st : r.steps) {
            const Task& t = view.inst.tasks[static_cast<std::size_t>(st.task)];
            if (t.is_virtual() && !cur.steps.empty()) {
                out.routes.push_back(std::move(cur));
                // Split routes restart at the depot; inside a static view every
                // route starts there, and entry(vt) is the depot, so the cut is
                // cost-neutral.
                cur = Route{view.inst.depot(), {}};
            }
            cur.steps.push_back(st);
        }
        out.routes.push_back(std::move(cur));
    }
    return out;
}

Solution to_executable(const Solution& normalized, const StaticView& view) {
    require_all_virtual(normalized, view);
    std::vector<Route> vehicle_routes(static_cast<std::size_t>(view.num_virtual));
    std::vector<Route> depot_routes;
    for (const Route& r : normalized.routes) {
        if (!r.steps.empty()) {
            const Task& lead = view.inst.tasks[static_cast<std::size_t>(r.steps[0].task)];
            if (lead.is_virtual()) {
                Route exec{view.source_outside[static_cast<std::size_t>(lead.owner)].stop_vertex,
                           {r.steps.begin() + 1, r.steps.end()}};
                vehicle_routes[static_cast<std::size_t>(lead.owner)] = std::move(exec);
                continue;
            }
        }
        for (const TaskStep& st : r.steps)
            if (view.inst.tasks[static_cast<std::size_t>(st.task)].is_virtual())
                throw InfeasibleError("virtual task not at the front of its route; normalize first");
        if (!r.steps.empty()) depot_routes.push_back(r);
    }
    Solution out;
    out.routes = std::move(vehicle_routes);
    for (Route& r : depot_routes) out.routes.push_back(std::move(r));
    return out;
}

}  // namespace dcarp
