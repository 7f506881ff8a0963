#include <doctest.h>

#include "gridnav/trainer.hpp"

using namespace gridnav;

namespace {

TrainConfig small_qlearning(std::uint64_t seed = 7) {
    TrainConfig cfg;
    cfg.algo = Algo::QLearning;
    cfg.env = default_paper_layout();
    cfg.episodes = 5;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("per-algorithm episode defaults") {
    TrainConfig cfg;
    cfg.algo = Algo::QLearning;
    CHECK(resolved_episodes(cfg) == 500);
    cfg.algo = Algo::Sarsa;
    CHECK(resolved_episodes(cfg) == 500);
    cfg.algo = Algo::Dqn;
    CHECK(resolved_episodes(cfg) == 300);
    cfg.episodes = 42;
    CHECK(resolved_episodes(cfg) == 42);
}

TEST_CASE("train produces one metrics row per episode") {
    for (Algo algo : {Algo::QLearning, Algo::Sarsa}) {
        TrainConfig cfg = small_qlearning();
        cfg.algo = algo;
        cfg.episodes = 1;
        const TrainResult res = train(cfg);
        REQUIRE(res.metrics.size() == 1);
        CHECK(res.metrics[0].episode == 0);
        CHECK(res.metrics[0].steps <= cfg.env.max_steps);
        CHECK(res.metrics[0].steps >= 1);
        CHECK(res.metrics[0].wall_ms == 0.0);
    }
}

TEST_CASE("identical config and seed give byte-identical metrics") {
    for (Algo algo : {Algo::QLearning, Algo::Sarsa, Algo::Dqn}) {
        TrainConfig cfg = small_qlearning(123);
        cfg.algo = algo;
        cfg.episodes = algo == Algo::Dqn ? 2 : 5;
        const TrainResult a = train(cfg);
        const TrainResult b = train(cfg);
        CHECK(metrics_to_csv(a.metrics) == metrics_to_csv(b.metrics));
        CHECK(save_model(a.model) == save_model(b.model));
    }
}

TEST_CASE("different seeds give different exploration") {
    TrainConfig a = small_qlearning(1);
    TrainConfig b = small_qlearning(2);
    a.episodes = b.episodes = 10;
    CHECK(metrics_to_csv(train(a).metrics) != metrics_to_csv(train(b).metrics));
}

TEST_CASE("metrics epsilon decays and never drops below the floor") {
    TrainConfig cfg = small_qlearning();
    cfg.episodes = 40;
    const TrainResult res = train(cfg);
    for (std::size_t i = 1; i < res.metrics.size(); ++i) {
        CHECK(res.metrics[i].epsilon <= res.metrics[i - 1].epsilon);
        CHECK(res.metrics[i].epsilon >= cfg.eps_final);
    }
}

TEST_CASE("metrics csv carries the exact header and row shape") {
    TrainConfig cfg = small_qlearning();
    cfg.episodes = 2;
    const std::string csv = metrics_to_csv(train(cfg).metrics);
    CHECK(csv.rfind("episode,steps,accumulated_reward,epsilon,reached_goal,wall_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows
}

TEST_CASE("tabular training converges to the optimal empty-map path") {
    // obstacle-free geometry forces nine up-right diagonals, total reward 6.5
    TrainConfig cfg;
    cfg.algo = Algo::QLearning;
    cfg.env = default_paper_layout();
    cfg.env.grid = OccupancyGrid(100, 100, 1.0, 0.0, 0.0, CellState::Free);
    cfg.seed = 3;
    const TrainResult res = train(cfg);
    const PathTrace trace = evaluate_greedy(res.model, cfg.env);
    REQUIRE(trace.reached_goal);
    CHECK(trace.steps == 9);
    CHECK(trace.total_reward == 6.5);
    for (Action a : trace.actions) CHECK(a == Action::UpRight);
}

TEST_CASE("greedy rollout of a zero table is the deterministic up-run") {
    const EnvConfig env = default_paper_layout();
    const Model model = QTable(num_states(env));
    const PathTrace trace = evaluate_greedy(model, env);
    CHECK_FALSE(trace.reached_goal);
    // ties break to up: climb the left edge, bump the wall, abort on revisit
    REQUIRE(trace.steps == 10);
    for (int i = 0; i < 9; ++i) {
        CHECK(trace.actions[static_cast<std::size_t>(i)] == Action::Up);
        CHECK(trace.rewards[static_cast<std::size_t>(i)] == -1.0);
    }
    CHECK(trace.rewards[9] == -20.0);
    CHECK(trace.states.back() == AgentState{0, 90});
}

TEST_CASE("goal-reaching traces satisfy the path arithmetic identity") {
    TrainConfig cfg = small_qlearning(3);
    cfg.episodes = 0;  // default 500
    const TrainResult res = train(cfg);
    const PathTrace trace = evaluate_greedy(res.model, cfg.env);
    REQUIRE(trace.reached_goal);
    int axis = 0, diag = 0;
    for (Action a : trace.actions) (is_diagonal(a) ? diag : axis)++;
    CHECK(trace.total_reward == 20.0 - axis - 1.5 * diag);
    CHECK(trace.steps == axis + diag);
    CHECK(trace.rewards.size() == trace.actions.size() + 1);
    CHECK(trace.rewards.back() == 20.0);
}

TEST_CASE("config text round-trips and rejects unknown keys") {
    TrainConfig cfg = small_qlearning();
    cfg.algo = Algo::Dqn;
    cfg.gamma = 0.95;
    cfg.eps_initial = 0.5;
    cfg.seed = 99;
    cfg.env.max_steps = 123;
    const std::string text = write_config(cfg);

    TrainConfig base;
    base.env = default_paper_layout();
    const TrainConfig back = parse_config(text, base);
    CHECK(back.algo == Algo::Dqn);
    CHECK(back.gamma == 0.95);
    CHECK(back.eps_initial == 0.5);
    CHECK(back.seed == 99);
    CHECK(back.env.max_steps == 123);
    CHECK(write_config(back) == text);

    CHECK_THROWS_AS(parse_config("bogus_key = 3\n", base), BadConfig);
    CHECK_THROWS_AS(parse_config("gamma 0.5\n", base), BadConfig);
    CHECK_THROWS_AS(parse_config("gamma = abc\n", base), BadConfig);
    CHECK_NOTHROW(parse_config("# comment only\n\ngamma = 0.5\n", base));
}

TEST_CASE("train rejects invalid configurations") {
    TrainConfig cfg = small_qlearning();
    cfg.gamma = 1.0;
    CHECK_THROWS_AS(train(cfg), BadConfig);
    cfg = small_qlearning();
    cfg.batch_size = cfg.buffer_capacity + 1;
    CHECK_THROWS_AS(train(cfg), BadConfig);
    cfg = small_qlearning();
    cfg.env.start = cfg.env.goal;
    CHECK_THROWS_AS(train(cfg), InvalidState);
}

TEST_CASE("comparison report covers every algorithm and reproduces train") {
    TrainConfig base = small_qlearning();
    base.episodes = 4;
    const std::uint64_t seeds[] = {11};
    const ComparisonReport report = run_comparison(base, seeds, 1);
    REQUIRE(report.runs.size() == 3);
    REQUIRE(report.aggregates.size() == 3);
    for (const RunReport& r : report.runs) {
        CHECK(r.seed == 11);
        CHECK(r.metrics.size() == 4);

        TrainConfig cfg = base;
        cfg.algo = r.algo;
        cfg.seed = r.seed;
        const TrainResult solo = train(cfg);
        CHECK(metrics_to_csv(solo.metrics) == metrics_to_csv(r.metrics));
    }

    const std::string csv = comparison_to_csv(report);
    CHECK(csv.rfind("algo,seed,reached_goal,greedy_steps,greedy_cost,greedy_reward,"
                    "episodes_to_first_goal,final50_median_reward\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("median and final-window helpers") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);

    std::vector<EpisodeMetrics> metrics;
    for (int i = 0; i < 60; ++i) {
        EpisodeMetrics m;
        m.episode = i;
        m.accumulated_reward = i;
        m.reached_goal = i == 30;
        metrics.push_back(m);
    }
    CHECK(episodes_to_first_goal(metrics) == 30);
    CHECK(final_window_median(metrics, 50) == 34.5);  // median of 10..59
}
