#pragma once

#include "dcarp/evaluate.hpp"
#include "dcarp/instance.hpp"

namespace dcarp {

// The virtual-task view of a DCARP instance: every outside vehicle becomes a
// depot vehicle with full capacity Q plus one virtual task (depot -> stop
// vertex, dm = Q - q_k, sc = mdc(depot, stop)). Virtual tasks are appended
// after the real tasks and never enter the road network, so no deadheading
// leg can use them. Solvers treat `inst` as an ordinary static instance.
struct StaticView {
    DcarpInstance inst;  // outside list empty; tasks = real + virtual
    std::vector<OutsideVehicle> source_outside;
    Cost adjustment = 0;  // A = sum of mdc(depot, stop_k)
    int num_real = 0;
    int num_virtual = 0;

    int virtual_task(int owner) const { return num_real + owner; }
};

// Throws InfeasibleError when a stop vertex is unreachable from the depot.
StaticView build_static_view(const DcarpInstance& inst);

// total_cost(s) - A. Throws InfeasibleError when a virtual task is missing.
Cost adjusted_cost(const Solution& s, const StaticView& view);
Cost adjusted_cost_sat(const Solution& s, const StaticView& view);

// Splits every route immediately before each non-leading virtual task, so all
// virtual tasks end up first in their route. Cost-preserving, exact.
Solution normalize_virtual_routes(const Solution& s, const StaticView& view);

// Normalized static solution -> executable DCARP solution: virtual-task
// routes become outside-vehicle routes (vt deleted, start = stop vertex),
// ordered by vehicle index before the depot routes. Throws InfeasibleError
// when a virtual task is missing or duplicated.
Solution to_executable(const Solution& normalized, const StaticView& view);

}  // namespace dcarp
