#include "blockland/adam.hpp"

#include <cmath>

namespace blockland {

AdamState init_adam(const ActorCriticParams& params) {
  AdamState s;
  s.m = zero_gradients_like(params);
  s.v = zero_gradients_like(params);
  s.step_count = 0;
  return s;
}

namespace {

void update_block(Mat& theta, const Mat& g, Mat& m, Mat& v, const AdamState& s, double lr, double bc1, double bc2) {
  m = s.beta1 * m + (1.0 - s.beta1) * g;
  v = s.beta2 * v.array().matrix() + (1.0 - s.beta2) * g.array().square().matrix();
  theta.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + s.epsilon);
}

void update_block(Vec& theta, const Vec& g, Vec& m, Vec& v, const AdamState& s, double lr, double bc1, double bc2) {
  m = s.beta1 * m + (1.0 - s.beta1) * g;
  v = s.beta2 * v.array().matrix() + (1.0 - s.beta2) * g.array().square().matrix();
  theta.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + s.epsilon);
}

}  // namespace

void adam_update(ActorCriticParams& params, const Gradients& grads, AdamState& state, double lr) {
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));

  for (int i = 0; i < 3; ++i) {
    update_block(params.actor[i].weights, grads.actor[i].weights, state.m.actor[i].weights, state.v.actor[i].weights,
                 state, lr, bc1, bc2);
    update_block(params.actor[i].biases, grads.actor[i].biases, state.m.actor[i].biases, state.v.actor[i].biases,
                 state, lr, bc1, bc2);
    update_block(params.critic[i].weights, grads.critic[i].weights, state.m.critic[i].weights,
                 state.v.critic[i].weights, state, lr, bc1, bc2);
    update_block(params.critic[i].biases, grads.critic[i].biases, state.m.critic[i].biases, state.v.critic[i].biases,
                 state, lr, bc1, bc2);
  }
}

}  // namespace blockland
