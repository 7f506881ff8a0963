#include <doctest.h>

#include <array>
#include <cmath>

#include "gridnav/agents.hpp"

using namespace gridnav;

namespace {

EnvConfig tiny_env() {
    EnvConfig cfg;
    cfg.grid = OccupancyGrid(100, 100, 1.0, 0.0, 0.0, CellState::Free);
    cfg.d = 10;
    cfg.start = {0, 0};
    cfg.goal = {90, 90};
    return cfg;
}

}  // namespace

TEST_CASE("epsilon schedule decays linearly and clamps") {
    const EpsilonSchedule sched{0.6, 0.1, 500};
    CHECK(epsilon_at(sched, 0) == 0.6);
    CHECK(epsilon_at(sched, 500) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(epsilon_at(sched, 10000) == doctest::Approx(0.1).epsilon(1e-12));
    // delta = 0.5 / 500 = 0.001 per episode
    CHECK(epsilon_at(sched, 250) == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(epsilon_at(sched, 1) == doctest::Approx(0.599).epsilon(1e-12));
}

TEST_CASE("select_action is greedy at eps 0 with lowest-index ties") {
    Rng rng(3);
    const std::array<double, 8> peaked{0, 0, 0, 1, 0, 0, 0, 0};
    CHECK(select_action(peaked, 0.0, rng) == Action::Right);
    const std::array<double, 8> flat{};
    CHECK(select_action(flat, 0.0, rng) == Action::Up);
}

TEST_CASE("select_action at eps 1 is uniform (chi-square at 99%)") {
    Rng rng(2024);
    const std::array<double, 8> q{};
    std::array<int, 8> counts{};
    const int n = 80000;
    for (int i = 0; i < n; ++i) {
        counts[static_cast<std::size_t>(static_cast<int>(select_action(q, 1.0, rng)))]++;
    }
    const double expected = n / 8.0;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 18.475);  // chi-square 99% quantile, 7 degrees of freedom
}

TEST_CASE("qlearning_update matches hand substitution") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));

    SUBCASE("zero table, r = -1") {
        const Transition t{{0, 0}, Action::Right, -1.0, {10, 0}, false};
        const TdQuantities td = qlearning_update(table, env, t, 0.01, 0.99);
        CHECK(td.td_target == -1.0);
        CHECK(td.td_error == 1.0);  // prediction 0 minus target -1
        CHECK(table.at(0, Action::Right) == doctest::Approx(-0.01).epsilon(1e-15));
    }
    SUBCASE("bootstrap uses the max of the next row") {
        table.at(state_index(env, {10, 0}), Action::Down) = 2.0;
        const Transition t{{0, 0}, Action::Right, -1.0, {10, 0}, false};
        const TdQuantities td = qlearning_update(table, env, t, 0.5, 0.99);
        CHECK(td.td_target == doctest::Approx(-1.0 + 0.99 * 2.0).epsilon(1e-15));
    }
    SUBCASE("terminal transitions drop the bootstrap") {
        table.at(state_index(env, {90, 90}), Action::Up) = 123.0;
        const Transition t{{80, 80}, Action::UpRight, 20.0, {90, 90}, true};
        const TdQuantities td = qlearning_update(table, env, t, 0.01, 0.99);
        CHECK(td.td_target == 20.0);
    }
}

TEST_CASE("sarsa_update bootstraps on the chosen next action") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));

    SUBCASE("zero table: Q becomes alpha * r") {
        const Transition t{{0, 0}, Action::Up, -1.5, {0, 10}, false};
        sarsa_update(table, env, t, Action::Left, 0.01, 0.99);
        CHECK(table.at(0, Action::Up) == doctest::Approx(-0.015).epsilon(1e-15));
    }
    SUBCASE("explicit bootstrap value") {
        table.at(state_index(env, {0, 10}), Action::Left) = 2.0;
        const Transition t{{0, 0}, Action::Up, -1.0, {0, 10}, false};
        const TdQuantities td = sarsa_update(table, env, t, Action::Left, 0.5, 0.99);
        CHECK(td.td_target == doctest::Approx(0.98).epsilon(1e-15));
    }
    SUBCASE("argmax next action coincides with qlearning") {
        QTable a(num_states(env)), b(num_states(env));
        Rng rng(5);
        for (int s = 0; s < a.n_states(); ++s) {
            for (int i = 0; i < kNumActions; ++i) {
                const double v = rng.uniform(-5, 5);
                a.at(s, static_cast<Action>(i)) = v;
                b.at(s, static_cast<Action>(i)) = v;
            }
        }
        const Transition t{{20, 30}, Action::DownRight, -1.0, {30, 30}, false};
        const Action best = argmax_action(a.row(state_index(env, {30, 30})));
        const TdQuantities qa = qlearning_update(a, env, t, 0.1, 0.99);
        const TdQuantities qb = sarsa_update(b, env, t, best, 0.1, 0.99);
        CHECK(qa.td_target == qb.td_target);
        CHECK(a.at(state_index(env, {20, 30}), t.a) == b.at(state_index(env, {20, 30}), t.a));

        // any non-argmax action differs whenever the row is not constant
        const Action other = best == Action::Up ? Action::Down : Action::Up;
        QTable c = a;
        const TdQuantities qc = sarsa_update(c, env, t, other, 0.1, 0.99);
        CHECK(qc.td_target != qa.td_target);
    }
}

TEST_CASE("a blend update contracts toward a fixed target") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));
    table.at(0, Action::Up) = 10.0;
    const double target = -2.0;
    // one Eq.-15-style update with alpha: distance to the target shrinks by (1 - alpha)
    const double before = std::abs(table.at(0, Action::Up) - target);
    const Transition t{{0, 0}, Action::Up, target, {0, 10}, true};  // terminal: target = r
    sarsa_update(table, env, t, Action::Up, 0.25, 0.99);
    const double after = std::abs(table.at(0, Action::Up) - target);
    CHECK(after == doctest::Approx(0.75 * before).epsilon(1e-12));
}

TEST_CASE("q values stay within max reward over (1 - gamma)") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));
    Rng rng(11);
    const double rewards[] = {-20.0, -1.0, -1.5, 20.0};
    for (int i = 0; i < 20000; ++i) {
        Transition t;
        t.s = state_at_index(env, static_cast<int>(rng.uniform_int(100)));
        t.s_next = state_at_index(env, static_cast<int>(rng.uniform_int(100)));
        t.a = static_cast<Action>(rng.uniform_int(8));
        t.r = rewards[rng.uniform_int(4)];
        t.done = rng.uniform() < 0.05;
        const double alpha = 0.01 + 0.99 * rng.uniform();
        qlearning_update(table, env, t, alpha, 0.99);
    }
    const double bound = 20.0 / (1.0 - 0.99);
    for (int s = 0; s < table.n_states(); ++s) {
        for (int a = 0; a < kNumActions; ++a) {
            CHECK(std::abs(table.at(s, static_cast<Action>(a))) <= bound);
        }
    }
}

TEST_CASE("greedy_action matches select_action at eps 0 everywhere") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));
    Rng rng(17);
    for (int s = 0; s < table.n_states(); ++s) {
        for (int a = 0; a < kNumActions; ++a) {
            table.at(s, static_cast<Action>(a)) = rng.uniform(-3, 3);
        }
    }
    const Model model = table;
    Rng rng2(99);
    for (int i = 0; i < table.n_states(); ++i) {
        const AgentState s = state_at_index(env, i);
        CHECK(greedy_action(model, env, s) == select_action(table.row(i), 0.0, rng2));
    }

    SUBCASE("argmax is invariant to a constant shift") {
        for (int i = 0; i < table.n_states(); ++i) {
            const AgentState s = state_at_index(env, i);
            const Action before = greedy_action(model, env, s);
            QTable shifted = table;
            for (int a = 0; a < kNumActions; ++a) {
                shifted.at(i, static_cast<Action>(a)) += 7.25;
            }
            CHECK(greedy_action(Model{shifted}, env, s) == before);
        }
    }
}

TEST_CASE("greedy_action on a zero table tie-breaks to up") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));
    CHECK(greedy_action(Model{table}, env, {0, 0}) == Action::Up);
    table.at(0, Action::UpRight) = 5.0;
    CHECK(greedy_action(Model{table}, env, {0, 0}) == Action::UpRight);
}

TEST_CASE("state_value weights the row by the policy") {
    const EnvConfig env = tiny_env();
    QTable table(num_states(env));
    const AgentState s{0, 0};

    std::array<double, 8> onehot{};
    onehot[2] = 1.0;
    table.at(0, Action::Left) = 4.5;
    CHECK(state_value(table, env, s, onehot) == 4.5);

    std::array<double, 8> uniform;
    uniform.fill(1.0 / 8);
    QTable zeros(num_states(env));
    CHECK(state_value(zeros, env, s, uniform) == 0.0);

    QTable row(num_states(env));
    row.at(0, Action::Up) = 8.0;
    CHECK(state_value(row, env, s, uniform) == doctest::Approx(1.0).epsilon(1e-15));

    std::array<double, 8> bad;
    bad.fill(0.2);
    CHECK_THROWS_AS(state_value(table, env, s, bad), BadDistribution);
    std::array<double, 8> negative{1.5, -0.5, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(state_value(table, env, s, negative), BadDistribution);
}

TEST_CASE("replay buffer is a ring that evicts the oldest") {
    ReplayBuffer buf(2);
    auto t = [](double r) {
        Transition tr;
        tr.r = r;
        return tr;
    };
    buf.push(t(1));
    buf.push(t(2));
    buf.push(t(3));
    CHECK(buf.size() == 2);
    CHECK(buf.at(0).r == 2.0);
    CHECK(buf.at(1).r == 3.0);
}

TEST_CASE("sampling the whole buffer returns each item once") {
    ReplayBuffer buf(256);
    for (int i = 0; i < 128; ++i) {
        Transition t;
        t.r = i;
        buf.push(t);
    }
    Rng rng(1);
    const auto batch = buf.sample(128, rng);
    REQUIRE(batch.size() == 128);
    std::array<bool, 128> seen{};
    for (const Transition& t : batch) {
        seen[static_cast<std::size_t>(t.r)] = true;
    }
    for (bool b : seen) CHECK(b);

    CHECK_THROWS_AS(buf.sample(129, rng), InsufficientSamples);
}

TEST_CASE("sampled indices are uniform (chi-square at 99%)") {
    ReplayBuffer buf(64);
    for (int i = 0; i < 40; ++i) {
        Transition t;
        t.r = i;
        buf.push(t);
    }
    Rng rng(31337);
    std::array<int, 40> counts{};
    const int rounds = 4000;
    for (int i = 0; i < rounds; ++i) {
        for (const Transition& t : buf.sample(8, rng)) {
            counts[static_cast<std::size_t>(t.r)]++;
        }
    }
    const double expected = rounds * 8 / 40.0;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 62.428);  // chi-square 99% quantile, 39 degrees of freedom
}

TEST_CASE("model files round-trip exactly") {
    const EnvConfig env = tiny_env();

    SUBCASE("zero qtable") {
        const Model m = QTable(100);
        CHECK(load_model(save_model(m)) == Model{QTable(100)});
    }
    SUBCASE("random qtable values survive bitwise") {
        QTable table(100);
        Rng rng(8);
        for (int s = 0; s < 100; ++s) {
            for (int a = 0; a < 8; ++a) {
                table.at(s, static_cast<Action>(a)) = rng.uniform(-1e6, 1e6) / 3.0;
            }
        }
        const Model loaded = load_model(save_model(Model{table}));
        CHECK(std::get<QTable>(loaded).raw() == table.raw());
    }
    SUBCASE("random mlp values survive bitwise") {
        Rng rng(9);
        const MlpParams p = init_mlp({2, 64, 64, 8}, rng);
        const Model loaded = load_model(save_model(Model{p}));
        const auto& q = std::get<MlpParams>(loaded);
        CHECK(q.sizes == p.sizes);
        CHECK(q.weights == p.weights);
        CHECK(q.biases == p.biases);
    }
    SUBCASE("kind mismatch is detected") {
        const std::string qtable_text = save_model(Model{QTable(4)});
        CHECK_THROWS_AS(load_model_kind(qtable_text, false), KindMismatch);
        CHECK_NOTHROW(load_model_kind(qtable_text, true));
    }
    SUBCASE("malformed files are rejected") {
        CHECK_THROWS_AS(load_model("bogus 1 2\n"), BadModelFile);
        CHECK_THROWS_AS(load_model("qtable 2 8\n1 2 3\n"), BadModelFile);
        CHECK_THROWS_AS(load_model("qtable 2 8\n"), BadModelFile);
    }
}
