#include "gridnav/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace gridnav {

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::QLearning: return "qlearning";
        case Algo::Sarsa: return "sarsa";
        case Algo::Dqn: return "dqn";
    }
    return "?";
}

Algo algo_from_name(const std::string& name) {
    if (name == "qlearning") return Algo::QLearning;
    if (name == "sarsa") return Algo::Sarsa;
    if (name == "dqn") return Algo::Dqn;
    throw BadConfig("unknown algorithm: " + name + " (expected qlearning, sarsa or dqn)");
}

int resolved_episodes(const TrainConfig& cfg) {
    if (cfg.episodes > 0) return cfg.episodes;
    return cfg.algo == Algo::Dqn ? 300 : 500;
}

namespace {

std::vector<int> dqn_layer_sizes() { return {2, 64, 64, 8}; }

void check_config(const TrainConfig& cfg) {
    if (cfg.gamma < 0.0 || cfg.gamma >= 1.0) throw BadConfig("gamma must lie in [0, 1)");
    if (cfg.eps_initial < 0.0 || cfg.eps_initial > 1.0 || cfg.eps_final < 0.0 ||
        cfg.eps_final > cfg.eps_initial) {
        throw BadConfig("exploration rates must satisfy 0 <= eps_final <= eps_initial <= 1");
    }
    if (cfg.buffer_capacity < 1) throw BadConfig("buffer_capacity must be positive");
    if (cfg.batch_size < 1 || cfg.batch_size > cfg.buffer_capacity) {
        throw BadConfig("batch_size must lie in [1, buffer_capacity]");
    }
    if (cfg.alpha <= 0.0 || cfg.alpha > 1.0) throw BadConfig("alpha must lie in (0, 1]");
    if (cfg.eta <= 0.0) throw BadConfig("eta must be positive");
    validate_env(cfg.env);
}

}  // namespace

TrainResult train(const TrainConfig& cfg) {
    check_config(cfg);
    const int episodes = resolved_episodes(cfg);
    const EnvConfig& env = cfg.env;
    const EpsilonSchedule sched{cfg.eps_initial, cfg.eps_final, episodes};

    Rng rng(cfg.seed);
    Model model = cfg.algo == Algo::Dqn ? Model(init_mlp(dqn_layer_sizes(), rng))
                                        : Model(QTable(num_states(env)));
    const StateEncoder encoder(env);
    ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity));

    auto values_at = [&](const AgentState& s) { return action_values(model, env, s); };

    TrainResult result{std::move(model), {}};
    result.metrics.reserve(static_cast<std::size_t>(episodes));

    for (int ep = 0; ep < episodes; ++ep) {
        const double eps = epsilon_at(sched, ep);
        const auto t0 = std::chrono::steady_clock::now();

        AgentState s = env.start;
        int steps = 0;
        double acc = 0.0;
        bool reached = false;

        Action a = Action::Up;
        if (cfg.algo == Algo::Sarsa) {
            a = select_action(action_values(result.model, env, s), eps, rng);
        }

        while (steps < env.max_steps) {
            if (cfg.algo != Algo::Sarsa) {
                a = select_action(action_values(result.model, env, s), eps, rng);
            }
            const StepOutcome out = step(env, s, a, steps);
            ++steps;

            const bool terminal =
                out.event == StepEvent::ReachedGoal ||
                (out.event == StepEvent::Collided && env.collision_terminates);
            if (out.event == StepEvent::ReachedGoal) {
                // arrival bonus on top of the final move's cost
                acc += kRewardGoal - action_cost(a);
                reached = true;
            } else {
                acc += out.reward;
            }

            const Transition t{s, a, out.reward, out.next_state, terminal};
            if (cfg.algo == Algo::Sarsa) {
                auto& table = std::get<QTable>(result.model);
                if (terminal) {
                    sarsa_update(table, env, t, Action::Up, cfg.alpha, cfg.gamma);
                } else {
                    const Action a_next =
                        select_action(table.row(state_index(env, out.next_state)), eps, rng);
                    sarsa_update(table, env, t, a_next, cfg.alpha, cfg.gamma);
                    a = a_next;
                }
            } else {
                buffer.push(t);
                if (buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                    const auto batch =
                        buffer.sample(static_cast<std::size_t>(cfg.batch_size), rng);
                    if (cfg.algo == Algo::QLearning) {
                        auto& table = std::get<QTable>(result.model);
                        for (const Transition& bt : batch) {
                            qlearning_update(table, env, bt, cfg.alpha, cfg.gamma);
                        }
                    } else {
                        dqn_update(std::get<MlpParams>(result.model), batch, encoder, cfg.eta,
                                   cfg.gamma);
                    }
                }
            }

            s = out.next_state;
            if (out.done) break;
        }

        double wall_ms = 0.0;
        if (cfg.record_wall_time) {
            wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        }
        result.metrics.push_back(EpisodeMetrics{ep, steps, acc, eps, reached, wall_ms});
    }
    return result;
}

PathTrace evaluate_greedy(const Model& model, const EnvConfig& env) {
    validate_env(env);

    PathTrace trace;
    trace.states.push_back(env.start);

    std::unordered_set<int> visited{state_index(env, env.start)};
    AgentState s = env.start;
    int steps = 0;
    while (steps < env.max_steps) {
        const Action a = greedy_action(model, env, s);
        const StepOutcome out = step(env, s, a, steps);
        ++steps;
        trace.actions.push_back(a);
        trace.states.push_back(out.next_state);
        if (out.event == StepEvent::ReachedGoal) {
            trace.rewards.push_back(-action_cost(a));
            trace.rewards.push_back(kRewardGoal);
            trace.reached_goal = true;
            break;
        }
        trace.rewards.push_back(out.reward);
        if (out.done) break;
        const int idx = state_index(env, out.next_state);
        if (visited.contains(idx)) break;  // stationary policy revisiting = loop
        visited.insert(idx);
        s = out.next_state;
    }
    trace.steps = static_cast<int>(trace.actions.size());
    trace.total_reward = episode_return(trace.rewards, 1.0);
    return trace;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw BadConfig("bad numeric value for " + key + ": " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v != std::floor(v)) throw BadConfig(key + " must be an integer, got " + value);
    return static_cast<int>(v);
}

}  // namespace

TrainConfig parse_config(const std::string& text, TrainConfig base) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw BadConfig("line " + std::to_string(line_no) + " is not \"key = value\": " +
                            line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "algo") {
            base.algo = algo_from_name(value);
        } else if (key == "gamma") {
            base.gamma = parse_number(key, value);
        } else if (key == "eps_initial") {
            base.eps_initial = parse_number(key, value);
        } else if (key == "eps_final") {
            base.eps_final = parse_number(key, value);
        } else if (key == "buffer_capacity") {
            base.buffer_capacity = parse_int(key, value);
        } else if (key == "batch_size") {
            base.batch_size = parse_int(key, value);
        } else if (key == "episodes") {
            base.episodes = parse_int(key, value);
        } else if (key == "alpha") {
            base.alpha = parse_number(key, value);
        } else if (key == "eta") {
            base.eta = parse_number(key, value);
        } else if (key == "seed") {
            base.seed = static_cast<std::uint64_t>(parse_number(key, value));
        } else if (key == "d") {
            base.env.d = parse_int(key, value);
        } else if (key == "footprint_w") {
            base.env.footprint_w = parse_int(key, value);
        } else if (key == "footprint_h") {
            base.env.footprint_h = parse_int(key, value);
        } else if (key == "start_x") {
            base.env.start.x = parse_int(key, value);
        } else if (key == "start_y") {
            base.env.start.y = parse_int(key, value);
        } else if (key == "goal_x") {
            base.env.goal.x = parse_int(key, value);
        } else if (key == "goal_y") {
            base.env.goal.y = parse_int(key, value);
        } else if (key == "max_steps") {
            base.env.max_steps = parse_int(key, value);
        } else if (key == "collision_terminates") {
            base.env.collision_terminates = parse_int(key, value) != 0;
        } else {
            throw BadConfig("unknown config key: " + key);
        }
    }
    return base;
}

std::string write_config(const TrainConfig& cfg) {
    std::ostringstream out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "algo = " << algo_name(cfg.algo) << "\n"
        << "gamma = " << num(cfg.gamma) << "\n"
        << "eps_initial = " << num(cfg.eps_initial) << "\n"
        << "eps_final = " << num(cfg.eps_final) << "\n"
        << "buffer_capacity = " << cfg.buffer_capacity << "\n"
        << "batch_size = " << cfg.batch_size << "\n"
        << "episodes = " << cfg.episodes << "\n"
        << "alpha = " << num(cfg.alpha) << "\n"
        << "eta = " << num(cfg.eta) << "\n"
        << "seed = " << cfg.seed << "\n"
        << "d = " << cfg.env.d << "\n"
        << "footprint_w = " << cfg.env.footprint_w << "\n"
        << "footprint_h = " << cfg.env.footprint_h << "\n"
        << "start_x = " << cfg.env.start.x << "\n"
        << "start_y = " << cfg.env.start.y << "\n"
        << "goal_x = " << cfg.env.goal.x << "\n"
        << "goal_y = " << cfg.env.goal.y << "\n"
        << "max_steps = " << cfg.env.max_steps << "\n"
        << "collision_terminates = " << (cfg.env.collision_terminates ? 1 : 0) << "\n";
    return out.str();
}

std::string metrics_to_csv(std::span<const EpisodeMetrics> metrics) {
    std::ostringstream out;
    out << "episode,steps,accumulated_reward,epsilon,reached_goal,wall_ms\n";
    char buf[160];
    for (const EpisodeMetrics& m : metrics) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%d,%.3f\n", m.episode, m.steps,
                      m.accumulated_reward, m.epsilon, m.reached_goal ? 1 : 0, m.wall_ms);
        out << buf;
    }
    return out.str();
}

int episodes_to_first_goal(std::span<const EpisodeMetrics> metrics) {
    for (const EpisodeMetrics& m : metrics) {
        if (m.reached_goal) return m.episode;
    }
    return -1;
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double final_window_median(std::span<const EpisodeMetrics> metrics, int window) {
    if (metrics.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t n = metrics.size();
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n);
    std::vector<double> tail;
    tail.reserve(w);
    for (std::size_t i = n - w; i < n; ++i) tail.push_back(metrics[i].accumulated_reward);
    return median(std::move(tail));
}

ComparisonReport run_comparison(const TrainConfig& base, std::span<const std::uint64_t> seeds,
                                int jobs) {
    if (seeds.empty()) throw BadConfig("run_comparison needs at least one seed");

    struct Task {
        Algo algo;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (Algo algo : {Algo::QLearning, Algo::Sarsa, Algo::Dqn}) {
        for (std::uint64_t seed : seeds) tasks.push_back(Task{algo, seed});
    }

    std::vector<RunReport> runs(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            TrainConfig cfg = base;
            cfg.algo = tasks[i].algo;
            cfg.seed = tasks[i].seed;
            TrainResult res = train(cfg);
            RunReport& r = runs[i];
            r.algo = cfg.algo;
            r.seed = cfg.seed;
            r.greedy = evaluate_greedy(res.model, cfg.env);
            r.greedy_cost = trace_cost(r.greedy);
            r.episodes_to_first_goal = episodes_to_first_goal(res.metrics);
            r.final_window_median_reward = final_window_median(res.metrics);
            r.metrics = std::move(res.metrics);
        }
    };

    int n_jobs = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    n_jobs = std::clamp(n_jobs, 1, static_cast<int>(tasks.size()));
    if (n_jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_jobs));
        for (int j = 0; j < n_jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ComparisonReport report;
    report.runs = std::move(runs);
    for (Algo algo : {Algo::QLearning, Algo::Sarsa, Algo::Dqn}) {
        AlgoAggregate agg;
        agg.algo = algo;
        std::vector<double> finals, costs;
        int reached = 0, total = 0;
        for (const RunReport& r : report.runs) {
            if (r.algo != algo) continue;
            ++total;
            finals.push_back(r.final_window_median_reward);
            if (r.greedy.reached_goal) {
                ++reached;
                costs.push_back(r.greedy_cost);
            }
        }
        agg.goal_rate = total ? static_cast<double>(reached) / total : 0.0;
        agg.median_final_window_reward = median(std::move(finals));
        agg.median_greedy_cost = median(std::move(costs));
        report.aggregates.push_back(agg);
    }
    return report;
}

std::string comparison_to_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "algo,seed,reached_goal,greedy_steps,greedy_cost,greedy_reward,"
           "episodes_to_first_goal,final50_median_reward\n";
    char buf[240];
    for (const RunReport& r : report.runs) {
        std::snprintf(buf, sizeof buf, "%s,%llu,%d,%d,%.6f,%.6f,%d,%.6f\n", algo_name(r.algo),
                      static_cast<unsigned long long>(r.seed), r.greedy.reached_goal ? 1 : 0,
                      r.greedy.steps, r.greedy_cost, r.greedy.total_reward,
                      r.episodes_to_first_goal, r.final_window_median_reward);
        out << buf;
    }
    return out.str();
}

}  // namespace gridnav
