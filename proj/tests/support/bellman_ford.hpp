#pragma once

#include <limits>
#include <vector>

#include "gridnav/oracle.hpp"

namespace gridnav::test {

/// Bellman-Ford over the lattice graph: the independent-algorithm cross-check
/// for the Dijkstra oracle. Returns doubled-cost distances by state index,
/// INT_MAX where unreachable.
inline std::vector<int> bellman_ford_distances(const LatticeGraph& g, int source) {
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(g.n_states), kInf);
    dist[static_cast<std::size_t>(source)] = 0;
    for (int round = 0; round < g.n_states; ++round) {
        bool changed = false;
        for (int u = 0; u < g.n_states; ++u) {
            if (dist[static_cast<std::size_t>(u)] == kInf) continue;
            for (const auto& e : g.adjacency[static_cast<std::size_t>(u)]) {
                const int nd = dist[static_cast<std::size_t>(u)] + e.cost2;
                if (nd < dist[static_cast<std::size_t>(e.to)]) {
                    dist[static_cast<std::size_t>(e.to)] = nd;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return dist;
}

}  // namespace gridnav::test
