#pragma once

#include <vector>

#include "dcarp/types.hpp"

namespace dcarp {

// All-pairs minimal deadheading cost over open (non-closed) arcs.
struct CostMatrix {
    int n = 0;                 // vertices 1..n
    std::vector<Cost> dist;    // (n+1)*(n+1), kInfCost = unreachable
    std::vector<int> via_arc;  // arc entering v on a shortest u->v path, -1 at u or unreachable

    Cost at(int u, int v) const { return dist[static_cast<std::size_t>(u) * (n + 1) + v]; }
    int via(int u, int v) const { return via_arc[static_cast<std::size_t>(u) * (n + 1) + v]; }
};

CostMatrix shortest_deadhead_matrix(const RoadNetwork& net);

// Recomputes in place after arc cost changes; result identical to a fresh build.
void refresh_costs(const RoadNetwork& net, CostMatrix& m);

// Arc ids of one shortest deadheading path from `from` to `to`, in traversal order.
// Empty when from == to. Throws InfeasibleError when unreachable.
std::vector<int> path_arcs(const RoadNetwork& net, const CostMatrix& m, int from, int to);

}  // namespace dcarp
