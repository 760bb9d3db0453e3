#include "dcarp/cost_matrix.hpp"

#include <algorithm>
#include <queue>
#include <utility>

namespace dcarp {

namespace {

// Adjacency as (arc id) lists per vertex, arcs in id order for deterministic
// parent selection.
std::vector<std::vector<int>> build_adjacency(const RoadNetwork& net) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(net.num_vertices) + 1);
    for (int a = 0; a < static_cast<int>(net.arcs.size()); ++a) {
        const Arc& arc = net.arcs[static_cast<std::size_t>(a)];
        if (arc.state == ArcState::Closed) continue;
        adj[static_cast<std::size_t>(arc.entry)].push_back(a);
    }
    return adj;
}

void dijkstra(const RoadNetwork& net, const std::vector<std::vector<int>>& adj,
              int src, Cost* dist, int* via) {
    const int n = net.num_vertices;
    std::fill(dist, dist + n + 1, kInfCost);
    std::fill(via, via + n + 1, -1);
    dist[src] = 0;
    using Item = std::pair<Cost, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0, src);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (int a : adj[static_cast<std::size_t>(u)]) {
            const Arc& arc = net.arcs[static_cast<std::size_t>(a)];
            const Cost nd = d + arc.dc;
            if (nd < dist[arc.exit]) {
                dist[arc.exit] = nd;
                via[arc.exit] = a;
                pq.emplace(nd, arc.exit);
            }
        }
    }
}

}  // namespace

CostMatrix shortest_deadhead_matrix(const RoadNetwork& net) {
    CostMatrix m;
    refresh_costs(net, m);
    return m;
}

void refresh_costs(const RoadNetwork& net, CostMatrix& m) {
    const int n = net.num_vertices;
    m.n = n;
    m.dist.assign(static_cast<std::size_t>(n + 1) * (n + 1), kInfCost);
    m.via_arc.assign(static_cast<std::size_t>(n + 1) * (n + 1), -1);
    const auto adj = build_adjacency(net);
    for (int src = 1; src <= n; ++src) {
        const std::size_t row = static_cast<std::size_t>(src) * (n + 1);
        dijkstra(net, adj, src, m.dist.data() + row, m.via_arc.data() + row);
    }
}

std::vector<int> path_arcs(const RoadNetwork& net, const CostMatrix& m, int from, int to) {
    if (m.at(from, to) == kInfCost)
        throw InfeasibleError("no deadheading path from vertex " + std::to_string(from) +
                              " to vertex " + std::to_string(to));
    std::vector<int> arcs;
    int v = to;
    while (v != from) {
        const int a = m.via(from, v);
        arcs.push_back(a);
        v = net.arcs[static_cast<std::size_t>(a)].entry;
    }
    std::reverse(arcs.begin(), arcs.end());
    return arcs;
}

}  // namespace dcarp
