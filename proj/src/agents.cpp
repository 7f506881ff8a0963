#include "gridnav/agents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gridnav {

double epsilon_at(const EpsilonSchedule& sched, int episode) {
    if (episode < 0) throw Error("episode must be non-negative");
    if (sched.total_episodes <= 0) throw Error("total_episodes must be positive");
    const double delta = (sched.eps_initial - sched.eps_final) / sched.total_episodes;
    return std::max(sched.eps_final, sched.eps_initial - episode * delta);
}

Action argmax_action(std::span<const double> q_values) {
    int best = 0;
    for (int i = 1; i < kNumActions; ++i) {
        if (q_values[static_cast<std::size_t>(i)] > q_values[static_cast<std::size_t>(best)]) {
            best = i;
        }
    }
    return static_cast<Action>(best);
}

Action select_action(std::span<const double> q_values, double eps, Rng& rng) {
    if (eps < 0.0 || eps > 1.0) throw Error("eps must lie in [0, 1]");
    if (rng.uniform() < eps) {
        return static_cast<Action>(rng.uniform_int(kNumActions));
    }
    return argmax_action(q_values);
}

namespace {

TdQuantities blend_update(QTable& table, int si, Action a, double td_target, double alpha) {
    double& q = table.at(si, a);
    TdQuantities td{td_target, q - td_target};
    q = (1.0 - alpha) * q + alpha * td_target;
    return td;
}

double max_row_value(const QTable& table, int state) {
    const auto row = table.row(state);
    return *std::max_element(row.begin(), row.end());
}

}  // namespace

TdQuantities qlearning_update(QTable& table, const EnvConfig& env, const Transition& t,
                              double alpha, double gamma) {
    if (alpha <= 0.0 || alpha > 1.0) throw Error("alpha must lie in (0, 1]");
    if (gamma < 0.0 || gamma >= 1.0) throw Error("gamma must lie in [0, 1)");
    const int si = state_index(env, t.s);
    const double bootstrap = t.done ? 0.0 : gamma * max_row_value(table, state_index(env, t.s_next));
    return blend_update(table, si, t.a, t.r + bootstrap, alpha);
}

TdQuantities sarsa_update(QTable& table, const EnvConfig& env, const Transition& t,
                          Action a_next, double alpha, double gamma) {
    if (alpha <= 0.0 || alpha > 1.0) throw Error("alpha must lie in (0, 1]");
    if (gamma < 0.0 || gamma >= 1.0) throw Error("gamma must lie in [0, 1)");
    const int si = state_index(env, t.s);
    const double bootstrap =
        t.done ? 0.0 : gamma * table.at(state_index(env, t.s_next), a_next);
    return blend_update(table, si, t.a, t.r + bootstrap, alpha);
}

double dqn_update(MlpParams& p, std::span<const Transition> batch, const StateEncoder& enc,
                  double eta, double gamma) {
    if (batch.empty()) throw EmptyBatch("dqn_update needs a non-empty batch");
    if (eta <= 0.0) throw Error("eta must be positive");
    if (gamma < 0.0 || gamma >= 1.0) throw Error("gamma must lie in [0, 1)");

    MlpWorkspace ws = make_workspace(p);
    MlpGrad grad = make_grad(p);

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    for (const Transition& t : batch) {
        double target = t.r;
        if (!t.done) {
            const auto& q_next = mlp_forward_cached(p, enc.encode(t.s_next), ws);
            target += gamma * *std::max_element(q_next.begin(), q_next.end());
        }
        const auto& q = mlp_forward_cached(p, enc.encode(t.s), ws);
        const int ai = static_cast<int>(t.a);
        const double err = q[static_cast<std::size_t>(ai)] - target;
        loss += 0.5 * err * err;
        mlp_backward_scalar(p, ws, ai, err * inv_n, grad);
    }
    apply_gradient(p, grad, eta);
    return loss * inv_n;
}

std::vector<double> action_values(const Model& model, const EnvConfig& env,
                                  const AgentState& s) {
    if (const auto* table = std::get_if<QTable>(&model)) {
        const auto row = table->row(state_index(env, s));
        return {row.begin(), row.end()};
    }
    const auto& mlp = std::get<MlpParams>(model);
    return mlp_forward(mlp, StateEncoder(env).encode(s));
}

Action greedy_action(const Model& model, const EnvConfig& env, const AgentState& s) {
    const auto q = action_values(model, env, s);
    return argmax_action(q);
}

double state_value(const QTable& table, const EnvConfig& env, const AgentState& s,
                   std::span<const double> policy_probs) {
    if (policy_probs.size() != kNumActions) {
        throw BadDistribution("policy must have 8 probabilities");
    }
    double sum = 0.0;
    for (double p : policy_probs) {
        if (p < 0.0) throw BadDistribution("policy probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw BadDistribution("policy must sum to 1");
    const auto row = table.row(state_index(env, s));
    double v = 0.0;
    for (int i = 0; i < kNumActions; ++i) {
        v += policy_probs[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(i)];
    }
    return v;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw Error("replay buffer capacity must be positive");
    entries_.reserve(std::min<std::size_t>(capacity, 1 << 20));
}

const Transition& ReplayBuffer::at(std::size_t i) const {
    if (i >= entries_.size()) throw Error("replay buffer index out of range");
    return entries_[(head_ + i) % entries_.size()];
}

void ReplayBuffer::push(const Transition& t) {
    if (entries_.size() < capacity_) {
        entries_.push_back(t);
        return;
    }
    entries_[head_] = t;  // overwrite the oldest
    head_ = (head_ + 1) % capacity_;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch_size, Rng& rng) const {
    if (batch_size > entries_.size()) {
        throw InsufficientSamples("buffer holds " + std::to_string(entries_.size()) +
                                  " transitions, need " + std::to_string(batch_size));
    }
    // Rejection sampling of distinct indices keeps the draw order uniform and
    // cheap for batch << size.
    std::vector<bool> used(entries_.size(), false);
    std::vector<Transition> batch;
    batch.reserve(batch_size);
    while (batch.size() < batch_size) {
        const auto idx = static_cast<std::size_t>(rng.uniform_int(entries_.size()));
        if (used[idx]) continue;
        used[idx] = true;
        batch.push_back(at(idx));
    }
    return batch;
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string save_model(const Model& model) {
    std::ostringstream out;
    if (const auto* table = std::get_if<QTable>(&model)) {
        out << "qtable " << table->n_states() << " " << kNumActions << "\n";
        for (int s = 0; s < table->n_states(); ++s) {
            const auto row = table->row(s);
            for (int a = 0; a < kNumActions; ++a) {
                out << (a ? " " : "") << format_value(row[static_cast<std::size_t>(a)]);
            }
            out << "\n";
        }
        return out.str();
    }
    const auto& mlp = std::get<MlpParams>(model);
    out << "mlp";
    for (int s : mlp.sizes) out << " " << s;
    out << "\n";
    for (int l = 0; l < mlp.num_layers(); ++l) {
        const auto lu = static_cast<std::size_t>(l);
        const int in_n = mlp.sizes[lu];
        const int out_n = mlp.sizes[lu + 1];
        for (int i = 0; i < out_n; ++i) {
            for (int j = 0; j < in_n; ++j) {
                out << (j ? " " : "")
                    << format_value(
                           mlp.weights[lu][static_cast<std::size_t>(i) * in_n +
                                           static_cast<std::size_t>(j)]);
            }
            out << "\n";
        }
        for (int i = 0; i < out_n; ++i) {
            out << (i ? " " : "") << format_value(mlp.biases[lu][static_cast<std::size_t>(i)]);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t expect,
                              const char* what) {
    std::istringstream is(line);
    std::vector<double> vals;
    double v;
    while (is >> v) vals.push_back(v);
    if (vals.size() != expect) {
        throw BadModelFile(std::string("bad ") + what + " row: expected " +
                           std::to_string(expect) + " values, got " +
                           std::to_string(vals.size()));
    }
    return vals;
}

std::string next_line(std::istringstream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw BadModelFile(std::string("truncated ") + what);
    return line;
}

}  // namespace

Model load_model(const std::string& text) {
    std::istringstream in(text);
    std::string header = next_line(in, "model file");
    std::istringstream hs(header);
    std::string kind;
    hs >> kind;

    if (kind == "qtable") {
        int n_states = 0, n_actions = 0;
        hs >> n_states >> n_actions;
        if (!hs || n_states <= 0 || n_actions != kNumActions) {
            throw BadModelFile("bad qtable header: " + header);
        }
        QTable table(n_states);
        for (int s = 0; s < n_states; ++s) {
            const auto vals = parse_row(next_line(in, "qtable"), kNumActions, "qtable");
            for (int a = 0; a < kNumActions; ++a) {
                table.at(s, static_cast<Action>(a)) = vals[static_cast<std::size_t>(a)];
            }
        }
        return table;
    }
    if (kind == "mlp") {
        std::vector<int> sizes;
        int v;
        while (hs >> v) sizes.push_back(v);
        if (sizes.size() < 2) throw BadModelFile("bad mlp header: " + header);
        MlpParams p = make_mlp(sizes);
        for (int l = 0; l < p.num_layers(); ++l) {
            const auto lu = static_cast<std::size_t>(l);
            const int in_n = sizes[lu];
            const int out_n = sizes[lu + 1];
            for (int i = 0; i < out_n; ++i) {
                const auto vals = parse_row(next_line(in, "mlp"), static_cast<std::size_t>(in_n),
                                            "mlp weight");
                std::copy(vals.begin(), vals.end(),
                          p.weights[lu].begin() + static_cast<std::size_t>(i) * in_n);
            }
            const auto bias = parse_row(next_line(in, "mlp"), static_cast<std::size_t>(out_n),
                                        "mlp bias");
            p.biases[lu] = bias;
        }
        return p;
    }
    throw BadModelFile("unknown model kind: " + kind);
}

Model load_model_kind(const std::string& text, bool expect_qtable) {
    Model m = load_model(text);
    const bool is_qtable = std::holds_alternative<QTable>(m);
    if (is_qtable != expect_qtable) {
        throw KindMismatch(std::string("model file holds a ") +
                           (is_qtable ? "qtable" : "mlp") + ", expected a " +
                           (expect_qtable ? "qtable" : "mlp"));
    }
    return m;
}

void save_model_file(const Model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << save_model(model);
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_model(ss.str());
}

}  // namespace gridnav
