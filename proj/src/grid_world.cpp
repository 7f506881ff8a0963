#include "gridnav/grid_world.hpp"

#include <string>

namespace gridnav {

std::pair<int, int> action_displacement(Action a, int d) {
    switch (a) {
        case Action::Up: return {0, d};
        case Action::Down: return {0, -d};
        case Action::Left: return {-d, 0};
        case Action::Right: return {d, 0};
        case Action::UpLeft: return {-d, d};
        case Action::UpRight: return {d, d};
        case Action::DownLeft: return {-d, -d};
        case Action::DownRight: return {d, -d};
    }
    return {0, 0};
}

const char* action_name(Action a) {
    switch (a) {
        case Action::Up: return "up";
        case Action::Down: return "down";
        case Action::Left: return "left";
        case Action::Right: return "right";
        case Action::UpLeft: return "up_left";
        case Action::UpRight: return "up_right";
        case Action::DownLeft: return "down_left";
        case Action::DownRight: return "down_right";
    }
    return "?";
}

bool is_valid_state(const EnvConfig& cfg, const AgentState& s) {
    if (cfg.d <= 0) return false;
    if (s.x % cfg.d != 0 || s.y % cfg.d != 0) return false;
    return !footprint_collides(cfg.grid, s.x, s.y, cfg.footprint_w, cfg.footprint_h);
}

void require_valid_state(const EnvConfig& cfg, const AgentState& s) {
    if (!is_valid_state(cfg, s)) {
        throw InvalidState("state (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                           ") is off-lattice or colliding");
    }
}

void validate_env(const EnvConfig& cfg) {
    if (cfg.d <= 0) throw InvalidState("step length d must be positive");
    if (cfg.footprint_w < 1 || cfg.footprint_h < 1) {
        throw InvalidState("footprint must be at least 1x1");
    }
    if (cfg.max_steps < 1) throw InvalidState("max_steps must be positive");
    require_valid_state(cfg, cfg.start);
    require_valid_state(cfg, cfg.goal);
    if (cfg.start == cfg.goal) throw InvalidState("start and goal must differ");
}

EnvConfig default_paper_layout() {
    EnvConfig cfg;
    cfg.grid = OccupancyGrid(100, 100, 1.0, 0.0, 0.0, CellState::Free);
    for (int y = 0; y < 60; ++y) {
        for (int x = 30; x < 40; ++x) cfg.grid.set(x, y, CellState::Occupied);
    }
    for (int y = 40; y < 100; ++y) {
        for (int x = 60; x < 70; ++x) cfg.grid.set(x, y, CellState::Occupied);
    }
    cfg.d = 10;
    cfg.footprint_w = 10;
    cfg.footprint_h = 10;
    cfg.start = {0, 0};
    cfg.goal = {90, 90};
    cfg.max_steps = 200;
    cfg.collision_terminates = false;
    return cfg;
}

StepOutcome step(const EnvConfig& cfg, const AgentState& s, Action a, int steps_so_far) {
    require_valid_state(cfg, s);
    if (steps_so_far >= cfg.max_steps) {
        throw InvalidState("episode already exhausted its step budget");
    }
    const bool truncates = steps_so_far + 1 >= cfg.max_steps;

    const auto [dx, dy] = action_displacement(a, cfg.d);
    const AgentState candidate{s.x + dx, s.y + dy};

    StepOutcome out;
    if (footprint_collides(cfg.grid, candidate.x, candidate.y, cfg.footprint_w,
                           cfg.footprint_h)) {
        out.next_state = s;
        out.reward = kRewardCollision;
        out.event = StepEvent::Collided;
        out.done = cfg.collision_terminates || truncates;
    } else if (candidate == cfg.goal) {
        out.next_state = candidate;
        out.reward = kRewardGoal;
        out.event = StepEvent::ReachedGoal;
        out.done = true;
    } else {
        out.next_state = candidate;
        out.reward = is_diagonal(a) ? kRewardDiagonal : kRewardAxis;
        out.event = truncates ? StepEvent::Truncated
                              : (is_diagonal(a) ? StepEvent::MovedDiagonal : StepEvent::Moved);
        out.done = truncates;
    }
    return out;
}

int num_states(const EnvConfig& cfg) {
    return (cfg.grid.width() / cfg.d) * (cfg.grid.height() / cfg.d);
}

int state_index(const EnvConfig& cfg, const AgentState& s) {
    if (s.x % cfg.d != 0 || s.y % cfg.d != 0 || s.x < 0 || s.y < 0 ||
        s.x >= cfg.grid.width() || s.y >= cfg.grid.height()) {
        throw InvalidState("state (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                           ") is not a lattice state of this grid");
    }
    const int per_row = cfg.grid.width() / cfg.d;
    return (s.y / cfg.d) * per_row + (s.x / cfg.d);
}

AgentState state_at_index(const EnvConfig& cfg, int index) {
    const int per_row = cfg.grid.width() / cfg.d;
    if (index < 0 || index >= num_states(cfg)) {
        throw InvalidState("state index out of range: " + std::to_string(index));
    }
    return AgentState{(index % per_row) * cfg.d, (index / per_row) * cfg.d};
}

double episode_return(const std::vector<double>& rewards, double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw Error("gamma must lie in [0, 1]");
    // Horner form, so gamma = 1 sums exactly.
    double acc = 0.0;
    for (auto it = rewards.rbegin(); it != rewards.rend(); ++it) {
        acc = *it + gamma * acc;
    }
    return acc;
}

}  // namespace gridnav
