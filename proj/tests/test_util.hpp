#pragma once

#include <vector>

#include "dcarp/evaluate.hpp"
#include "dcarp/instance.hpp"
#include "dcarp/rng.hpp"
#include "dcarp/split.hpp"
#include "dcarp/vt.hpp"

namespace testutil {

using namespace dcarp;

// Floyd-Warshall over open arcs, independent of the Dijkstra implementation.
std::vector<std::vector<Cost>> fw_matrix(const RoadNetwork& net);

// Exhaustive shortest simple path between two vertices; tiny graphs only.
Cost dfs_shortest(const RoadNetwork& net, int from, int to);

// Naive cost evaluation against a caller-supplied matrix.
Cost oracle_route_cost(const Route& r, const DcarpInstance& inst,
                       const std::vector<std::vector<Cost>>& m);
Cost oracle_total_cost(const Solution& s, const DcarpInstance& inst,
                       const std::vector<std::vector<Cost>>& m);

// Optimal split of a fixed sequence by enumerating all 2^(n-1) cut patterns.
// Returns kInfCost when no feasible split exists.
Cost oracle_split_cost(const TaskSequence& seq, const StaticView& view);
Cost oracle_split_cost(const TaskSequence& seq, const StaticView& view,
                       const std::vector<std::vector<Cost>>& m);

// Exhaustive CARP optimum: all task permutations, all direction patterns,
// optimal split. Usable up to ~7 tasks.
Cost oracle_optimum(const StaticView& view);

// Hand-checked 4-vertex fixture. Vertices 1..4, depot 1, Q 10, 2 vehicles.
// Edges: 1-2 (dc 2, sc 3, dm 4), 2-3 (dc 3, sc 5, dm 5), 3-4 (dc 2, sc 4,
// dm 3), 4-1 (dc 2), 1-3 (dc 5). Optimum 18.
DcarpInstance diamond();

// diamond() after its 2-3 task was served, with one vehicle stopped at
// vertex 3 holding remaining capacity 6. Best adjusted cost 11.
DcarpInstance diamond_with_ov();

// Random connected network: a spanning tree plus `extra_edges` extras, demand
// on roughly task_frac of the edges.
RoadNetwork random_network(Rng& rng, int nv, int extra_edges, Cost max_dc, Demand q,
                           double task_frac, int fleet);

struct RandomInstanceOpts {
    int nv = 8;
    int extra_edges = 6;
    Cost max_dc = 9;
    Demand q = 20;
    double task_frac = 0.6;
    int fleet = 3;
    int max_outside = 2;   // uniform 0..max_outside vehicles
    bool allow_states = false;  // sprinkle congested edges (closures skipped)
};

DcarpInstance random_instance(Rng& rng, const RandomInstanceOpts& opts = {});

// Random feasible solution over a static view: random permutation and
// directions, optimally split. Covers every task exactly once.
Solution random_view_solution(const StaticView& view, Rng& rng);

}  // namespace testutil
