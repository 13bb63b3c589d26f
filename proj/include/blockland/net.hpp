#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <utility>

#include "blockland/env.hpp"
#include "blockland/rng.hpp"

namespace blockland {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct DenseLayer {
  Mat weights;  // out x in
  Vec biases;   // out
};

// Three dense layers, tanh on the two hidden ones, linear head.
using MlpParams = std::array<DenseLayer, 3>;

// Separate actor (obs -> 6 logits) and critic (obs -> scalar value)
// networks, 64-node hidden layers, no shared parameters.
struct ActorCriticParams {
  MlpParams actor;
  MlpParams critic;
};

// Gradient (or moment) storage, shape-congruent with ActorCriticParams.
struct Gradients {
  MlpParams actor;
  MlpParams critic;
};

constexpr int kHiddenSize = 64;
constexpr int kActorParamCount = (kObsDim * kHiddenSize + kHiddenSize) +
                                 (kHiddenSize * kHiddenSize + kHiddenSize) +
                                 (kHiddenSize * kNumActions + kNumActions);  // 5382
constexpr int kCriticParamCount = (kObsDim * kHiddenSize + kHiddenSize) +
                                  (kHiddenSize * kHiddenSize + kHiddenSize) +
                                  (kHiddenSize * 1 + 1);  // 5057

long param_count(const MlpParams& net);

// Throws ConfigError unless the shapes are exactly the canonical
// 12 -> 64 -> 64 -> {6,1} architecture.
void check_architecture(const ActorCriticParams& params);

// Gaussian matrix orthogonalized by Householder QR, scaled by gain. Sign
// convention fixed via the R diagonal so the result is unique.
Mat orthogonal_init(int rows, int cols, double gain, Pcg32& rng);

// Hidden layers gain sqrt(2), actor head 0.01, critic head 1.0, zero biases.
ActorCriticParams init_params(std::uint64_t seed);

Gradients zero_gradients_like(const ActorCriticParams& params);

// Single-observation forward passes (matrix-vector path). The rollout
// collector uses these; the update path uses the batched versions below.
Vec forward_actor(const ActorCriticParams& params, const Observation& obs);
double forward_critic(const ActorCriticParams& params, const Observation& obs);

// Batched forward over observations stored as columns. Keeps the hidden
// activations for the backward pass.
struct ForwardCache {
  Mat h1;   // hidden1 x batch, post-tanh
  Mat h2;   // hidden2 x batch, post-tanh
  Mat out;  // head x batch, linear
};
ForwardCache forward_mlp(const MlpParams& net, const Mat& obs_cols);

// Backpropagates d(loss)/d(out) through the cached forward; accumulates
// into grads and returns nothing. Fixed reduction order.
void backward_mlp(const MlpParams& net, const Mat& obs_cols, const ForwardCache& cache, const Mat& dout,
                  MlpParams& grads);

// Numerically stable softmax (max subtracted); sums to 1.
Vec softmax(const Vec& logits);

// Samples from the categorical distribution given by softmax(logits);
// returns the action index and its log-probability. One uniform draw.
std::pair<int, double> sample_action(const Vec& logits, Pcg32& rng);

struct LogProbEntropy {
  double log_prob;
  double entropy;
};
LogProbEntropy log_prob_entropy(const Vec& logits, int action);

// L2 norm over every parameter of both networks, fixed summation order.
double global_norm(const Gradients& grads);

// Scales all gradients by max_norm/norm when the global norm exceeds
// max_norm; otherwise returns them unchanged.
Gradients clip_global_norm(Gradients grads, double max_norm);

}  // namespace blockland
