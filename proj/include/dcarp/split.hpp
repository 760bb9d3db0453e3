#pragma once

#include "dcarp/vt.hpp"

namespace dcarp {

// A grand tour: every task exactly once with a chosen direction, no route
// boundaries.
using TaskSequence = std::vector<TaskStep>;

TaskSequence flatten(const Solution& s);

struct SplitResult {
    Solution solution;  // depot-start routes
    Cost cost = 0;      // raw total cost (not adjusted)
};

// Optimal split of the fixed sequence: dynamic program over the auxiliary
// DAG of positions 0..n where edge (i,j) is a route serving tasks i+1..j
// with block demand <= Q. O(n^2). Directions are kept as given. Throws
// InfeasibleError when any single task exceeds Q or no finite split exists.
SplitResult ulusoy_split(const TaskSequence& seq, const StaticView& view);

// Greedy nearest-task construction. At distance ties the rule decides:
// 1 maximize return distance to depot, 2 minimize it, 3 maximize dm/sc,
// 4 minimize dm/sc, 5 = rule 1 while load < Q/2 else rule 2. Remaining ties
// break on lowest arc id, then the direction with the lower entry vertex.
// Deterministic; output always feasible. Throws InfeasibleError when a task
// cannot be reached from the depot or exceeds Q.
Solution path_scanning(const StaticView& view, int rule);

}  // namespace dcarp
