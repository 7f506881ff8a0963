#pragma once

#include <cstdint>
#include <span>

#include "gridnav/agents.hpp"
#include "gridnav/path_trace.hpp"

namespace gridnav {

struct BadConfig : Error {
    using Error::Error;
};

enum class Algo { QLearning, Sarsa, Dqn };

const char* algo_name(Algo a);
Algo algo_from_name(const std::string& name);

struct TrainConfig {
    Algo algo = Algo::QLearning;
    double gamma = 0.99;
    double eps_initial = 0.6;
    double eps_final = 0.1;
    int buffer_capacity = 100000;
    int batch_size = 128;
    int episodes = 0;  // 0 selects the per-algorithm default (dqn 300, others 500)
    double alpha = 0.01;   // tabular learning rate
    double eta = 0.001;    // network learning rate
    std::uint64_t seed = 0;
    EnvConfig env;
    bool record_wall_time = false;  // off by default so outputs are reproducible
};

int resolved_episodes(const TrainConfig& cfg);

struct EpisodeMetrics {
    int episode = 0;
    int steps = 0;
    double accumulated_reward = 0.0;  // undiscounted sum, terminal bonus included
    double epsilon = 0.0;
    bool reached_goal = false;
    double wall_ms = 0.0;
};

struct TrainResult {
    Model model;
    std::vector<EpisodeMetrics> metrics;
};

/// Runs the episode loop for the configured algorithm. Fully deterministic
/// given the seed: one generator drives the whole run, consumed in a fixed
/// order (network init draws for dqn, then per step the action-exploration
/// draw(s), then batch-index draws once the buffer can fill a batch; sarsa
/// instead draws its next action after each non-terminal step). Q-learning
/// and dqn learn from replayed batches, one update per environment step once
/// the buffer holds batch_size transitions; sarsa updates online.
TrainResult train(const TrainConfig& cfg);

/// Rolls the greedy (eps = 0) policy from env.start until the goal, a
/// repeated state (the stationary policy is looping), or max_steps.
PathTrace evaluate_greedy(const Model& model, const EnvConfig& env);

/// "key = value" lines; '#' starts a comment. Unknown keys are errors.
/// The environment grid itself is not part of the text format.
TrainConfig parse_config(const std::string& text, TrainConfig base);
std::string write_config(const TrainConfig& cfg);

/// CSV with header episode,steps,accumulated_reward,epsilon,reached_goal,wall_ms.
std::string metrics_to_csv(std::span<const EpisodeMetrics> metrics);

struct RunReport {
    Algo algo = Algo::QLearning;
    std::uint64_t seed = 0;
    PathTrace greedy;
    double greedy_cost = 0.0;
    int episodes_to_first_goal = -1;  // -1 when no episode reached the goal
    double final_window_median_reward = 0.0;
    std::vector<EpisodeMetrics> metrics;
};

struct AlgoAggregate {
    Algo algo = Algo::QLearning;
    double goal_rate = 0.0;                 // greedy paths reaching the goal
    double median_final_window_reward = 0.0;
    double median_greedy_cost = 0.0;        // over goal-reaching runs; NaN if none
};

struct ComparisonReport {
    std::vector<RunReport> runs;  // algo-major, seeds in the given order
    std::vector<AlgoAggregate> aggregates;
};

/// Trains every algorithm on every seed (episodes per Table-style defaults
/// unless base.episodes is set) and gathers greedy-path and final-window
/// statistics. jobs <= 0 selects the hardware concurrency. Runs share
/// nothing mutable; results are merged in task order, so the report does not
/// depend on scheduling.
ComparisonReport run_comparison(const TrainConfig& base, std::span<const std::uint64_t> seeds,
                                int jobs = 0);

/// CSV rows of a comparison, header
/// algo,seed,reached_goal,greedy_steps,greedy_cost,greedy_reward,episodes_to_first_goal,final50_median_reward.
std::string comparison_to_csv(const ComparisonReport& report);

int episodes_to_first_goal(std::span<const EpisodeMetrics> metrics);
double final_window_median(std::span<const EpisodeMetrics> metrics, int window = 50);
double median(std::vector<double> values);

}  // namespace gridnav
