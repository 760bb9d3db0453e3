#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcarp {

using Cost = std::int64_t;
using Demand = std::int64_t;

// Sentinel for closed arcs and unreachable vertex pairs; absorbing under add_sat.
inline constexpr Cost kInfCost = std::numeric_limits<Cost>::max();

inline Cost add_sat(Cost a, Cost b) {
    if (a == kInfCost || b == kInfCost) return kInfCost;
    return a + b;
}

struct DcarpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (instance files, configs, solution strings).
struct ParseError : DcarpError {
    using DcarpError::DcarpError;
};

// A route or solution that cannot be executed (unreachable leg, missing task...).
struct InfeasibleError : DcarpError {
    using DcarpError::DcarpError;
};

enum class ArcState : std::uint8_t { Normal = 0, Closed = 2, Congested = 3 };

struct Arc {
    int entry = 0;  // vertex where traversal/service begins
    int exit = 0;   // vertex where traversal/service ends
    Cost dc = 0;    // current deadheading cost; kInfCost iff state == Closed
    Cost sc = 0;    // serving cost, includes traversal; immutable
    Demand dm = 0;  // current demand, kept equal on both twins
    int twin = -1;
    ArcState state = ArcState::Normal;
    Cost base_dc = 0;  // expected cost without traffic events; immutable
};

struct RoadNetwork {
    std::string name;
    int num_vertices = 0;  // vertices are 1..num_vertices
    int depot = 1;
    int fleet_size = 1;    // N_veh
    Demand capacity = 1;   // Q
    std::vector<Arc> arcs; // twin pairs at ids (2k, 2k+1)

    // Adds an undirected edge as a twin arc pair; returns the forward arc id.
    int add_edge(int u, int v, Cost dc, Cost sc, Demand dm) {
        const int id = static_cast<int>(arcs.size());
        arcs.push_back({u, v, dc, sc, dm, id + 1, ArcState::Normal, dc});
        arcs.push_back({v, u, dc, sc, dm, id, ArcState::Normal, dc});
        return id;
    }

    bool valid_vertex(int v) const { return v >= 1 && v <= num_vertices; }
};

struct OutsideVehicle {
    int stop_vertex = 0;
    Demand remaining_capacity = 0;
    // Executable route index this vehicle was following when frozen; -1 when
    // unknown (instances loaded from file). Never serialized.
    int source_route = -1;
};

}  // namespace dcarp
