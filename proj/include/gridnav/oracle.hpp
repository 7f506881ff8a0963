#pragma once

#include <optional>

#include "gridnav/path_trace.hpp"

namespace gridnav {

struct Unreachable : Error {
    using Error::Error;
};

/// Explicit graph over the valid (non-colliding) lattice states. Edge costs
/// are doubled so Dijkstra runs on exact integers: 2 per axis move, 3 per
/// diagonal.
struct LatticeGraph {
    struct Edge {
        int to;        // state index
        int cost2;     // doubled cost
        Action action; // the move that produces this edge
    };

    int n_states = 0;
    std::vector<bool> valid;                 // by state index
    std::vector<std::vector<Edge>> adjacency; // by state index, action order
};

LatticeGraph build_lattice_graph(const EnvConfig& env);

struct OracleResult {
    double cost = 0.0;
    PathTrace trace;
};

/// Minimal-cost start-to-goal path by Dijkstra over the lattice graph.
/// Deterministic among equal-cost paths: prefer the predecessor with the
/// lower state index, then the lower action index. The optimal undiscounted
/// reward of a non-trivial path is 20 - cost. Throws Unreachable when the
/// goal is disconnected from the start.
OracleResult shortest_path(const EnvConfig& env);

}  // namespace gridnav
