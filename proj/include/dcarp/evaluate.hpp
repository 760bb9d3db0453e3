#pragma once

#include <string>
#include <vector>

#include "dcarp/instance.hpp"

namespace dcarp {

// Route cost: mdc(start, entry(t1)) + sum sc(ti) + connecting mdc legs +
// mdc(exit(tl), depot). Empty depot route costs 0; empty route from a stop
// vertex still pays mdc(stop, depot). Saturating: kInfCost when any leg is
// unreachable.
Cost route_cost_sat(const Route& r, const DcarpInstance& inst);

// Same, but throws InfeasibleError naming the unreachable leg.
Cost route_cost(const Route& r, const DcarpInstance& inst);

Cost total_cost_sat(const Solution& s, const DcarpInstance& inst);
Cost total_cost(const Solution& s, const DcarpInstance& inst);

struct Violation {
    enum Kind {
        MissingTask,
        DuplicateTask,
        CapacityExceeded,
        UnreachableLeg,
        StartMismatch,
        ReversedVirtual,
        UnknownTask,
    } kind;
    std::string message;
};

struct FeasibilityReport {
    std::vector<Violation> violations;
    bool feasible() const { return violations.empty(); }
};

// Violations are data, not errors. Route k < N_ov must start at outside
// vehicle k's stop vertex and respect q_k; later routes start at the depot
// and respect Q.
FeasibilityReport check_feasibility(const Solution& s, const DcarpInstance& inst);

Demand route_demand(const Route& r, const DcarpInstance& inst);

}  // namespace dcarp
