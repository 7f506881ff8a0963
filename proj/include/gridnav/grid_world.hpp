#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gridnav/grid_map.hpp"

namespace gridnav {

struct InvalidState : Error {
    using Error::Error;
};

/// Lattice position of the agent's footprint anchor, in cell units.
/// Both coordinates are multiples of the step length d.
struct AgentState {
    int x = 0;
    int y = 0;

    bool operator==(const AgentState&) const = default;
};

/// The eight discrete moves, in their canonical order.
enum class Action : int {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
    UpLeft = 4,
    UpRight = 5,
    DownLeft = 6,
    DownRight = 7,
};

constexpr int kNumActions = 8;
constexpr std::array<Action, kNumActions> kAllActions = {
    Action::Up,     Action::Down,    Action::Left,     Action::Right,
    Action::UpLeft, Action::UpRight, Action::DownLeft, Action::DownRight,
};

inline bool is_diagonal(Action a) { return static_cast<int>(a) >= 4; }

/// Displacement of an action for step length d, as (dx, dy).
std::pair<int, int> action_displacement(Action a, int d);

const char* action_name(Action a);

/// Movement cost of one action: 1 for axis moves, 1.5 for diagonals.
inline double action_cost(Action a) { return is_diagonal(a) ? 1.5 : 1.0; }

// Reward constants of the piecewise reward function.
constexpr double kRewardCollision = -20.0;
constexpr double kRewardAxis = -1.0;
constexpr double kRewardDiagonal = -1.5;
constexpr double kRewardGoal = 20.0;

struct EnvConfig {
    OccupancyGrid grid;
    int d = 10;  // lattice step, cells
    int footprint_w = 10;
    int footprint_h = 10;
    AgentState start{0, 0};
    AgentState goal{90, 90};
    int max_steps = 200;
    bool collision_terminates = false;
};

enum class StepEvent { Moved, MovedDiagonal, Collided, ReachedGoal, Truncated };

struct StepOutcome {
    AgentState next_state;
    double reward = 0.0;
    bool done = false;
    StepEvent event = StepEvent::Moved;
};

/// The experience tuple consumed by every update rule. done marks an
/// environment-terminal transition (goal, or collision when the config makes
/// collisions terminal); step-limit truncation is not terminal for learning.
struct Transition {
    AgentState s;
    Action a = Action::Up;
    double r = 0.0;
    AgentState s_next;
    bool done = false;
};

/// True iff s is on the lattice and its footprint placement is collision-free.
bool is_valid_state(const EnvConfig& cfg, const AgentState& s);

/// Raises InvalidState when s is off-lattice or colliding.
void require_valid_state(const EnvConfig& cfg, const AgentState& s);

/// Raises InvalidState when the whole config is unusable for training
/// (invalid start/goal, start == goal, bad step or footprint sizes).
void validate_env(const EnvConfig& cfg);

/// The 100x100 slalom layout: obstacle columns at x in [30,40) for
/// y in [0,60) and x in [60,70) for y in [40,100), start (0,0), goal (90,90).
EnvConfig default_paper_layout();

/// One deterministic environment transition. Collisions leave the agent in
/// place at reward -20; reaching the goal yields +20 and ends the episode;
/// otherwise the movement reward applies (-1 axis, -1.5 diagonal). The step
/// that hits the per-episode cap is marked done (Truncated when it would
/// otherwise be a plain move).
StepOutcome step(const EnvConfig& cfg, const AgentState& s, Action a, int steps_so_far);

/// Row-major index of a lattice state: (y/d) * (W/d) + (x/d).
int state_index(const EnvConfig& cfg, const AgentState& s);

/// Number of lattice states, (W/d) * (H/d).
int num_states(const EnvConfig& cfg);

/// Lattice state with the given row-major index.
AgentState state_at_index(const EnvConfig& cfg, int index);

/// Discounted return: sum_k gamma^k * rewards[k].
double episode_return(const std::vector<double>& rewards, double gamma);

}  // namespace gridnav
