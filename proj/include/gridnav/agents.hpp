#pragma once

#include <span>
#include <variant>

#include "gridnav/grid_world.hpp"
#include "gridnav/mlp.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

struct BadDistribution : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};
struct EmptyBatch : Error {
    using Error::Error;
};
struct BadModelFile : Error {
    using Error::Error;
};
struct KindMismatch : Error {
    using Error::Error;
};

/// Linear exploration decay from eps_initial to eps_final over total_episodes.
struct EpsilonSchedule {
    double eps_initial = 0.6;
    double eps_final = 0.1;
    int total_episodes = 500;
};

/// eps_initial - episode * (eps_initial - eps_final) / total_episodes,
/// clamped from below at eps_final.
double epsilon_at(const EpsilonSchedule& sched, int episode);

/// Epsilon-greedy: with probability eps a uniformly random action, otherwise
/// the argmax with lowest-index tie-break. Consumes one uniform draw for the
/// exploration coin, plus one integer draw when exploring.
Action select_action(std::span<const double> q_values, double eps, Rng& rng);

/// Argmax with lowest-index tie-break; no randomness.
Action argmax_action(std::span<const double> q_values);

/// Tabular action values, one row of 8 per lattice state, initialized to 0.
class QTable {
public:
    QTable() = default;
    explicit QTable(int n_states) : n_states_(n_states), values_(n_states * kNumActions, 0.0) {}

    int n_states() const { return n_states_; }
    double& at(int state, Action a) {
        return values_[static_cast<std::size_t>(state) * kNumActions + static_cast<int>(a)];
    }
    double at(int state, Action a) const {
        return values_[static_cast<std::size_t>(state) * kNumActions + static_cast<int>(a)];
    }
    std::span<const double> row(int state) const {
        return {values_.data() + static_cast<std::size_t>(state) * kNumActions, kNumActions};
    }
    const std::vector<double>& raw() const { return values_; }

    bool operator==(const QTable&) const = default;

private:
    int n_states_ = 0;
    std::vector<double> values_;
};

/// TD target and the (prediction - target) error actually used by an update.
struct TdQuantities {
    double td_target = 0.0;
    double td_error = 0.0;
};

/// Q-learning: target r + gamma * max_a Q(s', a), bootstrap dropped on
/// terminal transitions; blend update Q <- (1-alpha) Q + alpha * target.
TdQuantities qlearning_update(QTable& table, const EnvConfig& env, const Transition& t,
                              double alpha, double gamma);

/// SARSA: target r + gamma * Q(s', a_next) with a_next chosen by the current
/// behaviour policy; same blend update as Q-learning.
TdQuantities sarsa_update(QTable& table, const EnvConfig& env, const Transition& t,
                          Action a_next, double alpha, double gamma);

/// Maps lattice states onto the MLP input square [0,1]^2.
struct StateEncoder {
    double inv_w = 0.01;
    double inv_h = 0.01;

    explicit StateEncoder(const EnvConfig& env)
        : inv_w(1.0 / env.grid.width()), inv_h(1.0 / env.grid.height()) {}
    StateEncoder() = default;

    std::vector<double> encode(const AgentState& s) const {
        return {s.x * inv_w, s.y * inv_h};
    }
};

/// One semi-gradient step on the mean of 0.5 * (Q(s,a;w) - target)^2 over the
/// batch, targets computed from the current weights and treated as constants.
/// Returns the pre-update mean loss.
double dqn_update(MlpParams& p, std::span<const Transition> batch, const StateEncoder& enc,
                  double eta, double gamma);

/// Action scores of either model at a lattice state.
using Model = std::variant<QTable, MlpParams>;

std::vector<double> action_values(const Model& model, const EnvConfig& env,
                                  const AgentState& s);

/// Greedy argmax over the model's action values, lowest-index tie-break.
Action greedy_action(const Model& model, const EnvConfig& env, const AgentState& s);

/// V(s) = sum_a pi(a|s) Q(s, a). policy_probs must be a distribution over the
/// eight actions (non-negative, sums to 1 within 1e-9).
double state_value(const QTable& table, const EnvConfig& env, const AgentState& s,
                   std::span<const double> policy_probs);

/// Fixed-capacity ring of transitions; push evicts the oldest when full.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    const Transition& at(std::size_t i) const;

    void push(const Transition& t);

    /// batch_size distinct indices drawn uniformly without replacement, in
    /// draw order.
    std::vector<Transition> sample(std::size_t batch_size, Rng& rng) const;

private:
    std::size_t capacity_;
    std::size_t head_ = 0;  // index of the oldest entry once full
    std::vector<Transition> entries_;
};

/// Line-oriented model files: "qtable <n_states> 8" or "mlp 2 64 64 8" on the
/// first line, then rows of decimal values at 17 significant digits.
std::string save_model(const Model& model);
Model load_model(const std::string& text);
Model load_model_kind(const std::string& text, bool expect_qtable);

void save_model_file(const Model& model, const std::string& path);
Model load_model_file(const std::string& path);

}  // namespace gridnav
