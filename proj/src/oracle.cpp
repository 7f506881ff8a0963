#include "gridnav/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace gridnav {

LatticeGraph build_lattice_graph(const EnvConfig& env) {
    LatticeGraph g;
    g.n_states = num_states(env);
    g.valid.resize(static_cast<std::size_t>(g.n_states));
    g.adjacency.resize(static_cast<std::size_t>(g.n_states));
    for (int i = 0; i < g.n_states; ++i) {
        g.valid[static_cast<std::size_t>(i)] = is_valid_state(env, state_at_index(env, i));
    }
    for (int i = 0; i < g.n_states; ++i) {
        if (!g.valid[static_cast<std::size_t>(i)]) continue;
        const AgentState s = state_at_index(env, i);
        for (Action a : kAllActions) {
            const auto [dx, dy] = action_displacement(a, env.d);
            const AgentState t{s.x + dx, s.y + dy};
            if (t.x < 0 || t.y < 0 || t.x >= env.grid.width() || t.y >= env.grid.height()) {
                continue;
            }
            const int j = state_index(env, t);
            if (!g.valid[static_cast<std::size_t>(j)]) continue;
            g.adjacency[static_cast<std::size_t>(i)].push_back(
                LatticeGraph::Edge{j, is_diagonal(a) ? 3 : 2, a});
        }
    }
    return g;
}

OracleResult shortest_path(const EnvConfig& env) {
    require_valid_state(env, env.start);
    require_valid_state(env, env.goal);

    const LatticeGraph g = build_lattice_graph(env);
    const int start = state_index(env, env.start);
    const int goal = state_index(env, env.goal);

    if (start == goal) {
        OracleResult res;
        res.cost = 0.0;
        res.trace.states = {env.start};
        res.trace.reached_goal = true;
        return res;
    }

    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(g.n_states), kInf);
    std::vector<int> pred_state(static_cast<std::size_t>(g.n_states), -1);
    std::vector<int> pred_action(static_cast<std::size_t>(g.n_states), -1);

    using Item = std::pair<int, int>;  // (doubled distance, state index)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[static_cast<std::size_t>(start)] = 0;
    queue.emplace(0, start);

    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d != dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& e : g.adjacency[static_cast<std::size_t>(u)]) {
            const int nd = d + e.cost2;
            auto& dv = dist[static_cast<std::size_t>(e.to)];
            const bool better = nd < dv;
            const bool tie_break =
                nd == dv && (u < pred_state[static_cast<std::size_t>(e.to)] ||
                             (u == pred_state[static_cast<std::size_t>(e.to)] &&
                              static_cast<int>(e.action) <
                                  pred_action[static_cast<std::size_t>(e.to)]));
            if (better || tie_break) {
                dv = nd;
                pred_state[static_cast<std::size_t>(e.to)] = u;
                pred_action[static_cast<std::size_t>(e.to)] = static_cast<int>(e.action);
                if (better) queue.emplace(nd, e.to);
            }
        }
    }

    if (dist[static_cast<std::size_t>(goal)] == kInf) {
        throw Unreachable("goal is not reachable from start");
    }

    // Walk predecessors back from the goal.
    std::vector<int> rev_states;
    std::vector<Action> rev_actions;
    for (int v = goal; v != start; v = pred_state[static_cast<std::size_t>(v)]) {
        rev_states.push_back(v);
        rev_actions.push_back(static_cast<Action>(pred_action[static_cast<std::size_t>(v)]));
    }

    OracleResult res;
    res.cost = dist[static_cast<std::size_t>(goal)] / 2.0;
    res.trace.states.push_back(env.start);
    for (auto it = rev_states.rbegin(); it != rev_states.rend(); ++it) {
        res.trace.states.push_back(state_at_index(env, *it));
    }
    for (auto it = rev_actions.rbegin(); it != rev_actions.rend(); ++it) {
        res.trace.actions.push_back(*it);
        res.trace.rewards.push_back(-action_cost(*it));
    }
    res.trace.rewards.push_back(kRewardGoal);
    res.trace.steps = static_cast<int>(res.trace.actions.size());
    res.trace.reached_goal = true;
    res.trace.total_reward = kRewardGoal - res.cost;
    return res;
}

}  // namespace gridnav
