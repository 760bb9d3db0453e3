#pragma once

#include <string>
#include <vector>

#include "dcarp/cost_matrix.hpp"
#include "dcarp/types.hpp"

namespace dcarp {

// One service obligation. Real tasks reference a twin arc pair; serving either
// direction serves both. Virtual tasks (arc == -1) run depot -> stop vertex,
// are direction-fixed, and exist only in the task set, never in the network.
struct Task {
    int arc = -1;       // forward arc id, -1 for virtual tasks
    int twin_arc = -1;  // -1 for virtual tasks
    int entry = 0;      // forward direction
    int exit = 0;
    Demand dm = 0;
    Cost sc = 0;
    int owner = -1;  // outside-vehicle index, virtual tasks only

    bool is_virtual() const { return arc < 0; }
};

// A frozen problem state: network, cost closure, unserved tasks, outside vehicles.
struct DcarpInstance {
    RoadNetwork network;
    CostMatrix mdc;
    std::vector<Task> tasks;
    std::vector<OutsideVehicle> outside;
    int index = 0;  // position in the scenario chain

    int depot() const { return network.depot; }
    Demand capacity() const { return network.capacity; }
    int fleet_size() const { return network.fleet_size; }
};

// Rebuilds tasks from arcs with dm > 0 (forward = lower arc id) and the cost
// closure; keeps outside vehicles and index as set by the caller.
inline void rebuild_instance(DcarpInstance& inst) {
    inst.mdc = shortest_deadhead_matrix(inst.network);
    inst.tasks.clear();
    for (int a = 0; a < static_cast<int>(inst.network.arcs.size()); a += 2) {
        const Arc& arc = inst.network.arcs[static_cast<std::size_t>(a)];
        if (arc.dm > 0)
            inst.tasks.push_back({a, arc.twin, arc.entry, arc.exit, arc.dm, arc.sc, -1});
    }
}

// A directed task reference: rev serves the twin direction (illegal for
// virtual tasks).
struct TaskStep {
    int task = -1;
    bool rev = false;

    bool operator==(const TaskStep&) const = default;
};

struct Route {
    int start = 0;  // depot or an outside vehicle's stop vertex
    std::vector<TaskStep> steps;

    bool operator==(const Route&) const = default;
};

// Routes in order; in executable form the first N_ov routes belong to outside
// vehicles in index order. All routes end at the depot implicitly.
struct Solution {
    std::vector<Route> routes;

    bool operator==(const Solution&) const = default;
};

inline int step_entry(const Task& t, bool rev) { return rev ? t.exit : t.entry; }
inline int step_exit(const Task& t, bool rev) { return rev ? t.entry : t.exit; }

inline int step_entry(const DcarpInstance& inst, TaskStep s) {
    return step_entry(inst.tasks[static_cast<std::size_t>(s.task)], s.rev);
}
inline int step_exit(const DcarpInstance& inst, TaskStep s) {
    return step_exit(inst.tasks[static_cast<std::size_t>(s.task)], s.rev);
}

}  // namespace dcarp
