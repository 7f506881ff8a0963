#include "gridnav/mlp.hpp"

#include <cmath>

namespace gridnav {

MlpParams make_mlp(const std::vector<int>& sizes) {
    if (sizes.size() < 2) throw Error("an MLP needs at least two layers");
    MlpParams p;
    p.sizes = sizes;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        p.weights.emplace_back(static_cast<std::size_t>(sizes[l + 1]) *
                                   static_cast<std::size_t>(sizes[l]),
                               0.0);
        p.biases.emplace_back(static_cast<std::size_t>(sizes[l + 1]), 0.0);
    }
    return p;
}

MlpParams init_mlp(const std::vector<int>& sizes, Rng& rng) {
    MlpParams p = make_mlp(sizes);
    for (int l = 0; l < p.num_layers(); ++l) {
        const double bound = std::sqrt(6.0 / static_cast<double>(sizes[l]));
        for (double& w : p.weights[static_cast<std::size_t>(l)]) {
            w = rng.uniform(-bound, bound);
        }
    }
    return p;
}

std::vector<double> mlp_forward(const MlpParams& p, const std::vector<double>& input) {
    MlpWorkspace ws = make_workspace(p);
    return mlp_forward_cached(p, input, ws);
}

void MlpGrad::zero() {
    for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : biases) std::fill(b.begin(), b.end(), 0.0);
}

MlpGrad make_grad(const MlpParams& p) {
    MlpGrad g;
    for (const auto& w : p.weights) g.weights.emplace_back(w.size(), 0.0);
    for (const auto& b : p.biases) g.biases.emplace_back(b.size(), 0.0);
    return g;
}

MlpWorkspace make_workspace(const MlpParams& p) {
    MlpWorkspace ws;
    ws.post.emplace_back(static_cast<std::size_t>(p.sizes.front()), 0.0);
    for (int l = 0; l < p.num_layers(); ++l) {
        const auto n = static_cast<std::size_t>(p.sizes[static_cast<std::size_t>(l) + 1]);
        ws.pre.emplace_back(n, 0.0);
        ws.post.emplace_back(n, 0.0);
        ws.delta.emplace_back(n, 0.0);
    }
    return ws;
}

const std::vector<double>& mlp_forward_cached(const MlpParams& p,
                                              const std::vector<double>& input,
                                              MlpWorkspace& ws) {
    if (input.size() != static_cast<std::size_t>(p.input_size())) {
        throw Error("MLP input size mismatch");
    }
    ws.post[0] = input;
    const int L = p.num_layers();
    for (int l = 0; l < L; ++l) {
        const auto lu = static_cast<std::size_t>(l);
        const int in_n = p.sizes[lu];
        const int out_n = p.sizes[lu + 1];
        const std::vector<double>& x = ws.post[lu];
        const std::vector<double>& w = p.weights[lu];
        const std::vector<double>& b = p.biases[lu];
        std::vector<double>& z = ws.pre[lu];
        for (int i = 0; i < out_n; ++i) {
            const double* row = w.data() + static_cast<std::size_t>(i) * in_n;
            double acc = b[static_cast<std::size_t>(i)];
            for (int j = 0; j < in_n; ++j) acc += row[j] * x[static_cast<std::size_t>(j)];
            z[static_cast<std::size_t>(i)] = acc;
        }
        if (l + 1 < L) {
            std::vector<double>& h = ws.post[lu + 1];
            for (int i = 0; i < out_n; ++i) {
                h[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] > 0.0
                                                     ? z[static_cast<std::size_t>(i)]
                                                     : 0.0;
            }
        }
    }
    return ws.pre.back();
}

void mlp_backward_scalar(const MlpParams& p, MlpWorkspace& ws, int output_index,
                         double upstream, MlpGrad& grad) {
    const int L = p.num_layers();
    // seed: d(loss)/d(pre[L-1])
    auto& top = ws.delta[static_cast<std::size_t>(L - 1)];
    std::fill(top.begin(), top.end(), 0.0);
    top[static_cast<std::size_t>(output_index)] = upstream;

    for (int l = L - 1; l >= 0; --l) {
        const auto lu = static_cast<std::size_t>(l);
        const int in_n = p.sizes[lu];
        const int out_n = p.sizes[lu + 1];
        const std::vector<double>& x = ws.post[lu];
        const std::vector<double>& d = ws.delta[lu];
        std::vector<double>& gw = grad.weights[lu];
        std::vector<double>& gb = grad.biases[lu];
        for (int i = 0; i < out_n; ++i) {
            const double di = d[static_cast<std::size_t>(i)];
            if (di == 0.0) continue;
            gb[static_cast<std::size_t>(i)] += di;
            double* grow = gw.data() + static_cast<std::size_t>(i) * in_n;
            for (int j = 0; j < in_n; ++j) grow[j] += di * x[static_cast<std::size_t>(j)];
        }
        if (l == 0) break;
        // delta for the layer below, through the ReLU
        const std::vector<double>& w = p.weights[lu];
        const std::vector<double>& zprev = ws.pre[lu - 1];
        std::vector<double>& dprev = ws.delta[lu - 1];
        std::fill(dprev.begin(), dprev.end(), 0.0);
        for (int i = 0; i < out_n; ++i) {
            const double di = d[static_cast<std::size_t>(i)];
            if (di == 0.0) continue;
            const double* row = w.data() + static_cast<std::size_t>(i) * in_n;
            for (int j = 0; j < in_n; ++j) dprev[static_cast<std::size_t>(j)] += di * row[j];
        }
        for (int j = 0; j < in_n; ++j) {
            if (zprev[static_cast<std::size_t>(j)] <= 0.0) dprev[static_cast<std::size_t>(j)] = 0.0;
        }
    }
}

void apply_gradient(MlpParams& p, const MlpGrad& grad, double eta) {
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        auto& w = p.weights[l];
        const auto& gw = grad.weights[l];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= eta * gw[i];
        auto& b = p.biases[l];
        const auto& gb = grad.biases[l];
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= eta * gb[i];
    }
}

}  // namespace gridnav
