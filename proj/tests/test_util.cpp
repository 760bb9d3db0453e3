#include "test_util.hpp"

#include <algorithm>
#include <numeric>

namespace testutil {

std::vector<std::vector<Cost>> fw_matrix(const RoadNetwork& net) {
    const std::size_t n = static_cast<std::size_t>(net.num_vertices) + 1;
    std::vector<std::vector<Cost>> d(n, std::vector<Cost>(n, kInfCost));
    for (std::size_t v = 1; v < n; ++v) d[v][v] = 0;
    for (const Arc& a : net.arcs) {
        if (a.state == ArcState::Closed) continue;
        auto& cell = d[static_cast<std::size_t>(a.entry)][static_cast<std::size_t>(a.exit)];
        cell = std::min(cell, a.dc);
    }
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 1; j < n; ++j) {
                const Cost via = add_sat(d[i][k], d[k][j]);
                if (via < d[i][j]) d[i][j] = via;
            }
    return d;
}

namespace {

void dfs_all(const RoadNetwork& net, int at, int to, Cost acc, std::vector<char>& used,
             Cost& best) {
    if (at == to) {
        best = std::min(best, acc);
        return;
    }
    if (acc >= best) return;
    for (const Arc& a : net.arcs) {
        if (a.entry != at || a.state == ArcState::Closed) continue;
        if (used[static_cast<std::size_t>(a.exit)]) continue;
        used[static_cast<std::size_t>(a.exit)] = 1;
        dfs_all(net, a.exit, to, add_sat(acc, a.dc), used, best);
        used[static_cast<std::size_t>(a.exit)] = 0;
    }
}

}  // namespace

Cost dfs_shortest(const RoadNetwork& net, int from, int to) {
    Cost best = kInfCost;
    std::vector<char> used(static_cast<std::size_t>(net.num_vertices) + 1, 0);
    used[static_cast<std::size_t>(from)] = 1;
    dfs_all(net, from, to, 0, used, best);
    return best;
}

Cost oracle_route_cost(const Route& r, const DcarpInstance& inst,
                       const std::vector<std::vector<Cost>>& m) {
    Cost total = 0;
    int at = r.start;
    for (const TaskStep& st : r.steps) {
        const Task& t = inst.tasks[static_cast<std::size_t>(st.task)];
        const int in = st.rev ? t.exit : t.entry;
        const int out = st.rev ? t.entry : t.exit;
        total = add_sat(total, m[static_cast<std::size_t>(at)][static_cast<std::size_t>(in)]);
        total = add_sat(total, t.sc);
        at = out;
    }
    return add_sat(total, m[static_cast<std::size_t>(at)][static_cast<std::size_t>(inst.depot())]);
}

Cost oracle_total_cost(const Solution& s, const DcarpInstance& inst,
                       const std::vector<std::vector<Cost>>& m) {
    Cost total = 0;
    for (const Route& r : s.routes) total = add_sat(total, oracle_route_cost(r, inst, m));
    return total;
}

Cost oracle_split_cost(const TaskSequence& seq, const StaticView& view,
                       const std::vector<std::vector<Cost>>& m) {
    const int n = static_cast<int>(seq.size());
    if (n == 0) return 0;
    const auto depot = static_cast<std::size_t>(view.inst.depot());
    const Demand cap = view.inst.capacity();
    Cost best = kInfCost;
    for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask) {
        Cost total = 0;
        std::size_t at = depot;
        Demand load = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const TaskStep st = seq[static_cast<std::size_t>(i)];
            const Task& t = view.inst.tasks[static_cast<std::size_t>(st.task)];
            load += t.dm;
            if (load > cap) {
                ok = false;
                break;
            }
            total = add_sat(total, m[at][static_cast<std::size_t>(st.rev ? t.exit : t.entry)]);
            total = add_sat(total, t.sc);
            at = static_cast<std::size_t>(st.rev ? t.entry : t.exit);
            if (i + 1 == n || ((mask >> i) & 1u) != 0u) {
                total = add_sat(total, m[at][depot]);
                at = depot;
                load = 0;
            }
        }
        if (ok && total < best) best = total;
    }
    return best;
}

Cost oracle_split_cost(const TaskSequence& seq, const StaticView& view) {
    return oracle_split_cost(seq, view, fw_matrix(view.inst.network));
}

Cost oracle_optimum(const StaticView& view) {
    const auto m = fw_matrix(view.inst.network);
    const int n = static_cast<int>(view.inst.tasks.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Cost best = kInfCost;
    do {
        int free_dirs = 0;
        for (int t : perm)
            if (!view.inst.tasks[static_cast<std::size_t>(t)].is_virtual()) ++free_dirs;
        for (std::uint64_t dirs = 0; dirs < (1ull << free_dirs); ++dirs) {
            TaskSequence seq;
            int bit = 0;
            for (int t : perm) {
                bool rev = false;
                if (!view.inst.tasks[static_cast<std::size_t>(t)].is_virtual())
                    rev = ((dirs >> bit++) & 1u) != 0u;
                seq.push_back({t, rev});
            }
            const Cost c = oracle_split_cost(seq, view, m);
            if (c < best) best = c;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

DcarpInstance diamond() {
    DcarpInstance inst;
    inst.network.name = "diamond";
    inst.network.num_vertices = 4;
    inst.network.depot = 1;
    inst.network.fleet_size = 2;
    inst.network.capacity = 10;
    inst.network.add_edge(1, 2, 2, 3, 4);
    inst.network.add_edge(2, 3, 3, 5, 5);
    inst.network.add_edge(3, 4, 2, 4, 3);
    inst.network.add_edge(4, 1, 2, 2, 0);
    inst.network.add_edge(1, 3, 5, 5, 0);
    rebuild_instance(inst);
    return inst;
}

DcarpInstance diamond_with_ov() {
    DcarpInstance inst = diamond();
    inst.network.arcs[2].dm = 0;  // the 2-3 task was served before the freeze
    inst.network.arcs[3].dm = 0;
    inst.outside.push_back({3, 6, -1});
    inst.index = 1;
    rebuild_instance(inst);
    return inst;
}

RoadNetwork random_network(Rng& rng, int nv, int extra_edges, Cost max_dc, Demand q,
                           double task_frac, int fleet) {
    RoadNetwork net;
    net.name = "random";
    net.num_vertices = nv;
    net.depot = 1;
    net.fleet_size = fleet;
    net.capacity = q;

    auto rand_cost = [&] { return static_cast<Cost>(rng.uniform_int(1, max_dc)); };
    auto rand_dm = [&] {
        return rng.uniform_double() < task_frac ? static_cast<Demand>(rng.uniform_int(1, q)) : 0;
    };

    std::vector<int> order(static_cast<std::size_t>(nv));
    std::iota(order.begin(), order.end(), 1);
    rng.shuffle(order);
    std::vector<std::pair<int, int>> edges;
    auto has_edge = [&](int u, int v) {
        for (auto [a, b] : edges)
            if ((a == u && b == v) || (a == v && b == u)) return true;
        return false;
    };
    for (int i = 1; i < nv; ++i) {
        const int u = order[static_cast<std::size_t>(i)];
        const int v = order[static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(i)))];
        edges.emplace_back(u, v);
    }
    for (int e = 0; e < extra_edges; ++e) {
        const int u = static_cast<int>(rng.uniform_int(1, nv));
        const int v = static_cast<int>(rng.uniform_int(1, nv));
        if (u == v || has_edge(u, v)) continue;
        edges.emplace_back(u, v);
    }
    for (auto [u, v] : edges) {
        const Cost dc = rand_cost();
        const Demand dm = rand_dm();
        // Serving cost is meaningful (and serialized) only on demanded edges.
        const Cost sc = dm > 0 ? dc + static_cast<Cost>(rng.uniform_int(0, max_dc)) : dc;
        net.add_edge(u, v, dc, sc, dm);
    }
    // Guarantee at least one task.
    if (std::none_of(net.arcs.begin(), net.arcs.end(), [](const Arc& a) { return a.dm > 0; }))
        net.arcs[0].dm = net.arcs[1].dm = static_cast<Demand>(rng.uniform_int(1, q));
    return net;
}

DcarpInstance random_instance(Rng& rng, const RandomInstanceOpts& opts) {
    DcarpInstance inst;
    inst.network = random_network(rng, opts.nv, opts.extra_edges, opts.max_dc, opts.q,
                                  opts.task_frac, opts.fleet);
    if (opts.allow_states) {
        for (std::size_t a = 0; a < inst.network.arcs.size(); a += 2)
            if (rng.chance(0.15)) {
                Arc& fwd = inst.network.arcs[a];
                Arc& bwd = inst.network.arcs[fwd.twin >= 0 ? static_cast<std::size_t>(fwd.twin)
                                                           : a + 1];
                const Cost extra = static_cast<Cost>(rng.uniform_int(1, opts.max_dc));
                fwd.state = bwd.state = ArcState::Congested;
                fwd.dc = bwd.dc = fwd.base_dc + extra;
            }
    }
    const int n_ov = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(opts.max_outside + 1)));
    for (int k = 0; k < n_ov && inst.network.fleet_size > static_cast<int>(inst.outside.size());
         ++k) {
        const int stop = static_cast<int>(rng.uniform_int(1, opts.nv));
        const Demand q_k = static_cast<Demand>(rng.uniform_int(0, opts.q));
        inst.outside.push_back({stop, q_k, -1});
    }
    rebuild_instance(inst);
    return inst;
}

Solution random_view_solution(const StaticView& view, Rng& rng) {
    TaskSequence seq;
    for (int t = 0; t < static_cast<int>(view.inst.tasks.size()); ++t) seq.push_back({t, false});
    rng.shuffle(seq);
    for (TaskStep& st : seq)
        if (!view.inst.tasks[static_cast<std::size_t>(st.task)].is_virtual())
            st.rev = rng.chance(0.5);
    return ulusoy_split(seq, view).solution;
}

}  // namespace testutil
