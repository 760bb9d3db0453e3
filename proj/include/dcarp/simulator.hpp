#pragma once

#include <optional>
#include <vector>

#include "dcarp/instance.hpp"
#include "dcarp/rng.hpp"

namespace dcarp {

enum class ServiceMode { Collection, Delivery };

// Event probabilities and delta distributions for one simulation step.
// Congestion deltas are uniform fractions of base_dc, demand deltas uniform
// fractions of Q, both rounded and floored at 1.
struct EventConfig {
    double p_event = 0.5;  // any cost event fires on an edge
    double p_road = 0.1;   // closure, given an event on a normal edge
    double p_bdrr = 0.5;   // reopen, given an event on a closed edge
    double p_crr = 0.3;    // full recovery, given an event on a congested edge
    double p_crbb = 0.6;   // worsen vs ease split after non-recovery
    double p_icd = 0.35;   // existing demand grows
    double p_add = 0.35;   // empty edge gains demand
    double cong_frac_lo = 0.1, cong_frac_hi = 1.0;
    double dem_frac_lo = 0.1, dem_frac_hi = 0.5;
    int n_break = 0;
    ServiceMode mode = ServiceMode::Collection;
    std::uint64_t seed = 1;
};

void validate_event_config(const EventConfig& cfg);

// A vehicle still out at the stop instant.
struct FrozenVehicle {
    int route = -1;        // executable route it was following
    int vertex = 0;        // halt vertex
    Demand remaining = 0;  // initial capacity minus demand served
    int halt_arc = -1;     // last arc completed, -1 when still at the start
    Cost elapsed = 0;      // cost spent from dispatch to the halt vertex
};

struct ExecutionState {
    std::vector<FrozenVehicle> frozen;  // in route order
    std::vector<char> served;           // by task index
    std::vector<int> pending;           // routes never dispatched, in queue order
    double stop_time = 0.0;
};

// Completion time of the whole solution under unit speed: outside-vehicle
// routes start at t = 0, depot routes dispatch cheapest-first as one of the
// fleet's vehicles becomes free.
Cost solution_makespan(const Solution& exec, const DcarpInstance& inst);

// Runs `exec` until stop_time (clamped to the makespan). A vehicle finishes
// the arc it is traversing or serving and halts at that arc's end vertex; a
// task counts served only if its service completed by the halt instant.
ExecutionState execute_until(const Solution& exec, const DcarpInstance& inst, double stop_time);

// Uniform over (0, makespan). Throws DcarpError when makespan == 0.
double sample_stop_time(Cost makespan, Rng& rng);

// Per-step event accounting: eligible populations and fired counts, for
// frequency audits. All counts are over undirected edges (twins move
// together).
struct EventStats {
    long long n_normal = 0, n_closed = 0, n_congested = 0;
    long long n_task = 0, n_empty = 0;  // demand-changer eligible edges
    long long close_draws = 0;          // first draws landing on closure
    long long congest_draws = 0;        // first draws landing on congestion
    long long closures = 0;             // realized closures
    long long guard_skips = 0;          // closures abandoned by the connectivity guard
    long long reopens = 0, recoveries = 0, worsens = 0, eases = 0;
    long long e8 = 0, e9 = 0;
    long long breaks = 0;

    EventStats& operator+=(const EventStats& o);
};

// Fires breakdowns, the cost changer, and the demand changer on a copy of
// `inst`, then rebuilds tasks and the cost closure. Surviving vehicles become
// outside vehicles carrying their source route index. The result is a valid
// instance with index + 1.
DcarpInstance apply_events(const ExecutionState& state, const DcarpInstance& inst,
                           const EventConfig& cfg, Rng& rng, EventStats* stats = nullptr);

// Remaining-capacity band for experiment control: accept a stop time only if
// at least one vehicle is out and every frozen q_k lies in [lo, hi].
struct CapBand {
    Demand lo = 0;
    Demand hi = 0;
};

// One full simulation step: sample a stop time, execute, fire events. Returns
// nothing when the scenario is complete (no tasks, or nothing to interrupt).
// With a band, resamples the stop time up to 200 times, then accepts as-is.
std::optional<DcarpInstance> step_scenario(const DcarpInstance& inst, const Solution& best_exec,
                                           const EventConfig& cfg, Rng& rng,
                                           const CapBand* band = nullptr);

}  // namespace dcarp
