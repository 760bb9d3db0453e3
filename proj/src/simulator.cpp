#include "dcarp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "dcarp/evaluate.hpp"
#include "dcarp/io.hpp"

namespace dcarp {

namespace {

struct PlanItem {
    Cost s = 0, e = 0;  // absolute times, contiguous within a route
    int arc = -1;
    int task = -1;  // >= 0 marks a service item
};

struct VehiclePlan {
    int route = -1;
    Cost start = 0;
    Cost total = 0;  // trip cost
    std::vector<PlanItem> items;
};

// Expands every route into timed arc items and assigns start times: outside
// vehicles resume at t = 0, depot routes dispatch cheapest-first to the
// earliest free vehicle of the fleet.
std::vector<VehiclePlan> build_plans(const Solution& exec, const DcarpInstance& inst) {
    const int n_ov = static_cast<int>(inst.outside.size());
    if (static_cast<int>(exec.routes.size()) < n_ov)
        throw InfeasibleError("solution is missing outside-vehicle routes");

    std::vector<VehiclePlan> plans;
    plans.reserve(exec.routes.size());
    for (int r = 0; r < static_cast<int>(exec.routes.size()); ++r) {
        const Route& route = exec.routes[static_cast<std::size_t>(r)];
        VehiclePlan plan;
        plan.route = r;
        Cost at_time = 0;
        int at = route.start;
        auto deadhead_to = [&](int target) {
            for (int a : path_arcs(inst.network, inst.mdc, at, target)) {
                const Arc& arc = inst.network.arcs[static_cast<std::size_t>(a)];
                plan.items.push_back({at_time, at_time + arc.dc, a, -1});
                at_time += arc.dc;
                at = arc.exit;
            }
        };
        for (const TaskStep& st : route.steps) {
            const Task& t = inst.tasks[static_cast<std::size_t>(st.task)];
            if (t.is_virtual()) throw InfeasibleError("virtual task in an executable route");
            deadhead_to(step_entry(t, st.rev));
            const int arc = st.rev ? t.twin_arc : t.arc;
            plan.items.push_back({at_time, at_time + t.sc, arc, st.task});
            at_time += t.sc;
            at = step_exit(t, st.rev);
        }
        deadhead_to(inst.depot());
        plan.total = at_time;
        plans.push_back(std::move(plan));
    }

    // Free times of the fleet's vehicles: the ones not out start free at 0.
    std::priority_queue<Cost, std::vector<Cost>, std::greater<Cost>> free_at;
    const int spare = inst.fleet_size() - n_ov;
    for (int k = 0; k < spare; ++k) free_at.push(0);
    for (int r = 0; r < n_ov; ++r) {
        plans[static_cast<std::size_t>(r)].start = 0;
        free_at.push(plans[static_cast<std::size_t>(r)].total);
    }

    std::vector<int> queue;
    for (int r = n_ov; r < static_cast<int>(plans.size()); ++r) queue.push_back(r);
    std::stable_sort(queue.begin(), queue.end(), [&](int a, int b) {
        return plans[static_cast<std::size_t>(a)].total < plans[static_cast<std::size_t>(b)].total;
    });
    for (int r : queue) {
        if (free_at.empty()) throw InfeasibleError("no vehicle available for a depot route");
        const Cost start = free_at.top();
        free_at.pop();
        plans[static_cast<std::size_t>(r)].start = start;
        free_at.push(start + plans[static_cast<std::size_t>(r)].total);
    }

    // Shift items to absolute times.
    for (VehiclePlan& p : plans)
        for (PlanItem& it : p.items) {
            it.s += p.start;
            it.e += p.start;
        }
    return plans;
}

Cost sample_delta(Rng& rng, double lo, double hi, Cost base) {
    const double u = rng.uniform_real(lo, hi);
    const Cost c = static_cast<Cost>(std::llround(u * static_cast<double>(base)));
    return std::max<Cost>(1, c);
}

void set_edge_demand(RoadNetwork& net, int fwd_arc, Demand dm) {
    net.arcs[static_cast<std::size_t>(fwd_arc)].dm = dm;
    const int twin = net.arcs[static_cast<std::size_t>(fwd_arc)].twin;
    net.arcs[static_cast<std::size_t>(twin)].dm = dm;
}

void set_edge_cost(RoadNetwork& net, int fwd_arc, Cost dc, ArcState state) {
    Arc& a = net.arcs[static_cast<std::size_t>(fwd_arc)];
    Arc& b = net.arcs[static_cast<std::size_t>(a.twin)];
    a.dc = b.dc = dc;
    a.state = b.state = state;
}

// Vertices every emitted instance must keep reachable: endpoints of demanded
// edges and halt vertices of surviving vehicles.
std::vector<char> required_vertices(const RoadNetwork& net, const std::vector<FrozenVehicle>& frozen,
                                    const std::vector<char>& broken) {
    std::vector<char> req(static_cast<std::size_t>(net.num_vertices) + 1, 0);
    req[static_cast<std::size_t>(net.depot)] = 1;
    for (std::size_t a = 0; a < net.arcs.size(); a += 2)
        if (net.arcs[a].dm > 0) {
            req[static_cast<std::size_t>(net.arcs[a].entry)] = 1;
            req[static_cast<std::size_t>(net.arcs[a].exit)] = 1;
        }
    for (std::size_t k = 0; k < frozen.size(); ++k)
        if (!broken[k]) req[static_cast<std::size_t>(frozen[k].vertex)] = 1;
    return req;
}

std::vector<char> reachable_from_depot(const RoadNetwork& net) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(net.num_vertices) + 1);
    for (const Arc& a : net.arcs)
        if (a.state != ArcState::Closed) adj[static_cast<std::size_t>(a.entry)].push_back(a.exit);
    std::vector<char> seen(static_cast<std::size_t>(net.num_vertices) + 1, 0);
    std::vector<int> stack{net.depot};
    seen[static_cast<std::size_t>(net.depot)] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

bool covers(const std::vector<char>& seen, const std::vector<char>& req) {
    for (std::size_t v = 1; v < req.size(); ++v)
        if (req[v] && !seen[v]) return false;
    return true;
}

}  // namespace

void validate_event_config(const EventConfig& cfg) {
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0))
            throw DcarpError(std::string("event probability out of [0,1]: ") + name);
    };
    prob(cfg.p_event, "p_event");
    prob(cfg.p_road, "p_road");
    prob(cfg.p_bdrr, "p_bdrr");
    prob(cfg.p_crr, "p_crr");
    prob(cfg.p_crbb, "p_crbb");
    prob(cfg.p_icd, "p_icd");
    prob(cfg.p_add, "p_add");
    if (!(cfg.cong_frac_lo > 0.0 && cfg.cong_frac_hi >= cfg.cong_frac_lo))
        throw DcarpError("congestion delta bounds must satisfy 0 < lo <= hi");
    if (!(cfg.dem_frac_lo > 0.0 && cfg.dem_frac_hi >= cfg.dem_frac_lo))
        throw DcarpError("demand delta bounds must satisfy 0 < lo <= hi");
    if (cfg.n_break < 0) throw DcarpError("n_break must be >= 0");
}

Cost solution_makespan(const Solution& exec, const DcarpInstance& inst) {
    Cost makespan = 0;
    for (const VehiclePlan& p : build_plans(exec, inst))
        makespan = std::max(makespan, p.start + p.total);
    return makespan;
}

ExecutionState execute_until(const Solution& exec, const DcarpInstance& inst, double stop_time) {
    const std::vector<VehiclePlan> plans = build_plans(exec, inst);
    Cost makespan = 0;
    for (const VehiclePlan& p : plans) makespan = std::max(makespan, p.start + p.total);
    const double t = std::clamp(stop_time, 0.0, static_cast<double>(makespan));

    ExecutionState state;
    state.stop_time = t;
    state.served.assign(inst.tasks.size(), 0);

    const int n_ov = static_cast<int>(inst.outside.size());
    std::vector<int> pending_order;
    for (const VehiclePlan& p : plans) {
        const double start = static_cast<double>(p.start);
        const double completion = static_cast<double>(p.start + p.total);
        if (p.route >= n_ov && t <= start) {
            pending_order.push_back(p.route);
            continue;
        }
        FrozenVehicle fv;
        fv.route = p.route;
        fv.vertex = exec.routes[static_cast<std::size_t>(p.route)].start;
        fv.remaining = p.route < n_ov
                           ? inst.outside[static_cast<std::size_t>(p.route)].remaining_capacity
                           : inst.capacity();
        for (const PlanItem& it : p.items) {
            // Complete if done by t or in progress at t; untouched otherwise.
            const bool done = static_cast<double>(it.e) <= t;
            const bool in_progress =
                static_cast<double>(it.s) < t && t < static_cast<double>(it.e);
            if (!done && !in_progress) break;
            fv.vertex = inst.network.arcs[static_cast<std::size_t>(it.arc)].exit;
            fv.halt_arc = it.arc;
            fv.elapsed = it.e - p.start;
            if (it.task >= 0) {
                state.served[static_cast<std::size_t>(it.task)] = 1;
                fv.remaining -= inst.tasks[static_cast<std::size_t>(it.task)].dm;
            }
            if (in_progress) break;
        }
        if (completion <= t) continue;  // back at the depot
        state.frozen.push_back(fv);
    }
    // Queue order: cheapest trip first, ties by route index.
    std::stable_sort(pending_order.begin(), pending_order.end(), [&](int a, int b) {
        return plans[static_cast<std::size_t>(a)].total < plans[static_cast<std::size_t>(b)].total;
    });
    state.pending = std::move(pending_order);
    return state;
}

double sample_stop_time(Cost makespan, Rng& rng) {
    if (makespan <= 0) throw DcarpError("sample_stop_time requires a positive makespan");
    double t = 0.0;
    while (t <= 0.0) t = rng.uniform_real(0.0, static_cast<double>(makespan));
    return t;
}

EventStats& EventStats::operator+=(const EventStats& o) {
    n_normal += o.n_normal;
    n_closed += o.n_closed;
    n_congested += o.n_congested;
    n_task += o.n_task;
    n_empty += o.n_empty;
    close_draws += o.close_draws;
    congest_draws += o.congest_draws;
    closures += o.closures;
    guard_skips += o.guard_skips;
    reopens += o.reopens;
    recoveries += o.recoveries;
    worsens += o.worsens;
    eases += o.eases;
    e8 += o.e8;
    e9 += o.e9;
    breaks += o.breaks;
    return *this;
}

DcarpInstance apply_events(const ExecutionState& state, const DcarpInstance& inst,
                           const EventConfig& cfg, Rng& rng, EventStats* stats) {
    validate_event_config(cfg);
    EventStats local;
    EventStats& st = stats != nullptr ? *stats : local;

    DcarpInstance next = inst;
    RoadNetwork& net = next.network;
    for (std::size_t t = 0; t < state.served.size(); ++t)
        if (state.served[t]) set_edge_demand(net, inst.tasks[t].arc, 0);

    // Breakdowns: pick vehicles uniformly without replacement; in collection
    // mode the broken vehicle's load lands on its halt arc.
    std::vector<char> broken(state.frozen.size(), 0);
    if (cfg.n_break > 0 && !state.frozen.empty()) {
        std::vector<int> idx(state.frozen.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
        rng.shuffle(idx);
        idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(cfg.n_break)));
        std::sort(idx.begin(), idx.end());
        for (int k : idx) {
            broken[static_cast<std::size_t>(k)] = 1;
            ++st.breaks;
            const FrozenVehicle& fv = state.frozen[static_cast<std::size_t>(k)];
            if (cfg.mode == ServiceMode::Collection && fv.halt_arc >= 0) {
                const Demand load = inst.capacity() - fv.remaining;
                if (load > 0) {
                    const Arc& a = net.arcs[static_cast<std::size_t>(fv.halt_arc)];
                    const int fwd = fv.halt_arc % 2 == 0 ? fv.halt_arc : a.twin;
                    const Demand dm = std::min(inst.capacity(),
                                               net.arcs[static_cast<std::size_t>(fwd)].dm + load);
                    set_edge_demand(net, fwd, dm);
                }
            }
        }
    }

    // Cost changer, one decision per undirected edge.
    const std::vector<char> req = required_vertices(net, state.frozen, broken);
    for (int a = 0; a < static_cast<int>(net.arcs.size()); a += 2) {
        Arc& arc = net.arcs[static_cast<std::size_t>(a)];
        switch (arc.state) {
            case ArcState::Normal: ++st.n_normal; break;
            case ArcState::Closed: ++st.n_closed; break;
            case ArcState::Congested: ++st.n_congested; break;
        }
        if (!rng.chance(cfg.p_event)) continue;
        if (arc.state == ArcState::Normal) {
            auto congest = [&] {
                set_edge_cost(net, a, arc.base_dc + sample_delta(rng, cfg.cong_frac_lo,
                                                                 cfg.cong_frac_hi, arc.base_dc),
                              ArcState::Congested);
            };
            if (!rng.chance(cfg.p_road)) {
                ++st.congest_draws;
                congest();
                continue;
            }
            ++st.close_draws;
            // Tentative closure; the connectivity guard may redirect the
            // event to congestion (re-rolling p_road up to 3 times) or drop it.
            set_edge_cost(net, a, kInfCost, ArcState::Closed);
            if (covers(reachable_from_depot(net), req)) {
                ++st.closures;
                continue;
            }
            set_edge_cost(net, a, arc.base_dc, ArcState::Normal);
            bool redirected = false;
            for (int retry = 0; retry < 3; ++retry)
                if (!rng.chance(cfg.p_road)) {
                    congest();
                    redirected = true;
                    break;
                }
            if (!redirected) ++st.guard_skips;
        } else if (arc.state == ArcState::Closed) {
            if (rng.chance(cfg.p_bdrr)) {
                set_edge_cost(net, a, arc.base_dc, ArcState::Normal);
                ++st.reopens;
            }
        } else {
            if (rng.chance(cfg.p_crr)) {
                set_edge_cost(net, a, arc.base_dc, ArcState::Normal);
                ++st.recoveries;
            } else if (rng.chance(cfg.p_crbb)) {
                set_edge_cost(net, a,
                              arc.dc + sample_delta(rng, cfg.cong_frac_lo, cfg.cong_frac_hi,
                                                    arc.base_dc),
                              ArcState::Congested);
                ++st.worsens;
            } else {
                const Cost eased = std::max(
                    arc.base_dc,
                    arc.dc - sample_delta(rng, cfg.cong_frac_lo, cfg.cong_frac_hi, arc.base_dc));
                set_edge_cost(net, a, eased, ArcState::Congested);
                ++st.eases;
            }
        }
    }

    // Demand changer. New demand only lands on edges that stay connected to
    // the depot.
    const std::vector<char> seen = reachable_from_depot(net);
    for (int a = 0; a < static_cast<int>(net.arcs.size()); a += 2) {
        const Arc& arc = net.arcs[static_cast<std::size_t>(a)];
        if (arc.dm > 0) {
            ++st.n_task;
            if (rng.chance(cfg.p_icd)) {
                const Demand d = sample_delta(rng, cfg.dem_frac_lo, cfg.dem_frac_hi,
                                              inst.capacity());
                set_edge_demand(net, a, std::min(inst.capacity(), arc.dm + d));
                ++st.e8;
            }
        } else {
            if (!seen[static_cast<std::size_t>(arc.entry)] ||
                !seen[static_cast<std::size_t>(arc.exit)])
                continue;
            ++st.n_empty;
            if (rng.chance(cfg.p_add)) {
                const Demand d = sample_delta(rng, cfg.dem_frac_lo, cfg.dem_frac_hi,
                                              inst.capacity());
                set_edge_demand(net, a, std::min(inst.capacity(), d));
                ++st.e9;
            }
        }
    }

    next.outside.clear();
    for (std::size_t k = 0; k < state.frozen.size(); ++k) {
        if (broken[k]) continue;
        const FrozenVehicle& fv = state.frozen[k];
        next.outside.push_back({fv.vertex, fv.remaining, fv.route});
    }
    next.index = inst.index + 1;
    rebuild_instance(next);
    const auto problems = validate_instance(next);
    if (!problems.empty())
        throw DcarpError("internal: event step produced an invalid instance: " + problems.front());
    return next;
}

std::optional<DcarpInstance> step_scenario(const DcarpInstance& inst, const Solution& best_exec,
                                           const EventConfig& cfg, Rng& rng,
                                           const CapBand* band) {
    if (inst.tasks.empty()) return std::nullopt;
    const Cost makespan = solution_makespan(best_exec, inst);
    if (makespan <= 0) return std::nullopt;

    ExecutionState state = execute_until(best_exec, inst, sample_stop_time(makespan, rng));
    if (band != nullptr) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            bool ok = !state.frozen.empty();
            for (const FrozenVehicle& fv : state.frozen)
                ok = ok && fv.remaining >= band->lo && fv.remaining <= band->hi;
            if (ok) break;
            state = execute_until(best_exec, inst, sample_stop_time(makespan, rng));
        }
    }
    return apply_events(state, inst, cfg, rng);
}

}  // namespace dcarp
