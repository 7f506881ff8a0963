#pragma once

#include <string>
#include <vector>

#include "gridnav/grid_world.hpp"

namespace gridnav {

/// A rollout on the lattice. rewards holds one movement reward per action;
/// when the walk ends on the goal a final +20 arrival entry follows, so
/// total_reward always equals the plain sum of rewards. For a collision-free
/// goal path with m axis and k diagonal moves that sum is 20 - m - 1.5k.
struct PathTrace {
    std::vector<AgentState> states;  // visited states, start first
    std::vector<Action> actions;
    std::vector<double> rewards;
    double total_reward = 0.0;
    int steps = 0;  // number of moves taken
    bool reached_goal = false;
};

/// Movement cost of the trace: 1 per axis move, 1.5 per diagonal.
double trace_cost(const PathTrace& trace);

std::string path_trace_to_json(const PathTrace& trace);
PathTrace path_trace_from_json(const std::string& text);

}  // namespace gridnav
