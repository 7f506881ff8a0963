#pragma once

#include <array>
#include <vector>

#include "gridnav/errors.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

/// Fully connected ReLU network with a linear output head. The fixed shape
/// used for action values is [2, 64, 64, 8]: a normalized (x, y) in, one
/// score per action out.
struct MlpParams {
    std::vector<int> sizes;                     // layer widths, input first
    std::vector<std::vector<double>> weights;   // weights[l]: sizes[l+1] x sizes[l], row-major
    std::vector<std::vector<double>> biases;    // biases[l]: sizes[l+1]

    int num_layers() const { return static_cast<int>(weights.size()); }
    int input_size() const { return sizes.front(); }
    int output_size() const { return sizes.back(); }
};

/// Zero-initialized network of the given shape.
MlpParams make_mlp(const std::vector<int>& sizes);

/// Weights uniform in +-sqrt(6 / fan_in), biases zero. Draws layer by layer,
/// row-major, off the given generator.
MlpParams init_mlp(const std::vector<int>& sizes, Rng& rng);

/// Affine -> ReLU -> affine -> ReLU -> ... -> affine.
std::vector<double> mlp_forward(const MlpParams& p, const std::vector<double>& input);

/// Per-layer gradient buffers matching an MlpParams shape.
struct MlpGrad {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    void zero();
};

MlpGrad make_grad(const MlpParams& p);

/// Scratch space for one forward/backward pass; reusable across samples.
struct MlpWorkspace {
    std::vector<std::vector<double>> pre;   // pre-activations per layer
    std::vector<std::vector<double>> post;  // post-activations (post[0] = input)
    std::vector<std::vector<double>> delta;
};

MlpWorkspace make_workspace(const MlpParams& p);

/// Forward pass keeping activations in ws; returns the output layer values
/// (ws.pre.back()).
const std::vector<double>& mlp_forward_cached(const MlpParams& p,
                                              const std::vector<double>& input,
                                              MlpWorkspace& ws);

/// Accumulates into grad the gradient of (upstream * output[output_index])
/// with respect to every parameter, for the activations currently in ws.
void mlp_backward_scalar(const MlpParams& p, MlpWorkspace& ws, int output_index,
                         double upstream, MlpGrad& grad);

/// p -= eta * grad.
void apply_gradient(MlpParams& p, const MlpGrad& grad, double eta);

}  // namespace gridnav
