#include "blockland/net.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "blockland/errors.hpp"

namespace blockland {

long param_count(const MlpParams& net) {
  long n = 0;
  for (const DenseLayer& l : net) n += l.weights.size() + l.biases.size();
  return n;
}

void check_architecture(const ActorCriticParams& params) {
  auto expect = [](const DenseLayer& l, int out, int in, const std::string& name) {
    if (l.weights.rows() != out || l.weights.cols() != in) {
      throw ConfigError(name + " weights: expected " + std::to_string(out) + "x" + std::to_string(in) + ", got " +
                        std::to_string(l.weights.rows()) + "x" + std::to_string(l.weights.cols()));
    }
    if (l.biases.size() != out) {
      throw ConfigError(name + " biases: expected " + std::to_string(out) + ", got " + std::to_string(l.biases.size()));
    }
  };
  expect(params.actor[0], kHiddenSize, kObsDim, "actor layer 0");
  expect(params.actor[1], kHiddenSize, kHiddenSize, "actor layer 1");
  expect(params.actor[2], kNumActions, kHiddenSize, "actor layer 2");
  expect(params.critic[0], kHiddenSize, kObsDim, "critic layer 0");
  expect(params.critic[1], kHiddenSize, kHiddenSize, "critic layer 1");
  expect(params.critic[2], 1, kHiddenSize, "critic layer 2");

  if (param_count(params.actor) != kActorParamCount) {
    throw ConfigError("actor parameter count mismatch: " + std::to_string(param_count(params.actor)));
  }
  if (param_count(params.critic) != kCriticParamCount) {
    throw ConfigError("critic parameter count mismatch: " + std::to_string(param_count(params.critic)));
  }
}

Mat orthogonal_init(int rows, int cols, double gain, Pcg32& rng) {
  // QR of a square Gaussian, then crop. Rows (or columns, whichever is
  // smaller) of the result are orthonormal up to the gain.
  const int n = std::max(rows, cols);
  Mat g(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) g(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return gain * q.topLeftCorner(rows, cols);
}

ActorCriticParams init_params(std::uint64_t seed) {
  Pcg32 rng = make_stream(seed, stream_id::kParamInit);
  const double root2 = std::sqrt(2.0);

  ActorCriticParams p;
  p.actor[0] = DenseLayer{orthogonal_init(kHiddenSize, kObsDim, root2, rng), Vec::Zero(kHiddenSize)};
  p.actor[1] = DenseLayer{orthogonal_init(kHiddenSize, kHiddenSize, root2, rng), Vec::Zero(kHiddenSize)};
  p.actor[2] = DenseLayer{orthogonal_init(kNumActions, kHiddenSize, 0.01, rng), Vec::Zero(kNumActions)};
  p.critic[0] = DenseLayer{orthogonal_init(kHiddenSize, kObsDim, root2, rng), Vec::Zero(kHiddenSize)};
  p.critic[1] = DenseLayer{orthogonal_init(kHiddenSize, kHiddenSize, root2, rng), Vec::Zero(kHiddenSize)};
  p.critic[2] = DenseLayer{orthogonal_init(1, kHiddenSize, 1.0, rng), Vec::Zero(1)};
  check_architecture(p);
  return p;
}

Gradients zero_gradients_like(const ActorCriticParams& params) {
  Gradients g;
  for (int i = 0; i < 3; ++i) {
    g.actor[i] = DenseLayer{Mat::Zero(params.actor[i].weights.rows(), params.actor[i].weights.cols()),
                            Vec::Zero(params.actor[i].biases.size())};
    g.critic[i] = DenseLayer{Mat::Zero(params.critic[i].weights.rows(), params.critic[i].weights.cols()),
                             Vec::Zero(params.critic[i].biases.size())};
  }
  return g;
}

namespace {

void check_obs_dim(const MlpParams& net, Eigen::Index dim) {
  if (net[0].weights.cols() != dim) {
    throw UsageError("observation dimension " + std::to_string(dim) + " does not match network input " +
                     std::to_string(net[0].weights.cols()));
  }
}

}  // namespace

Vec forward_actor(const ActorCriticParams& params, const Observation& obs) {
  check_obs_dim(params.actor, obs.size());
  const Vec h1 = (params.actor[0].weights * obs + params.actor[0].biases).array().tanh();
  const Vec h2 = (params.actor[1].weights * h1 + params.actor[1].biases).array().tanh();
  return params.actor[2].weights * h2 + params.actor[2].biases;
}

double forward_critic(const ActorCriticParams& params, const Observation& obs) {
  check_obs_dim(params.critic, obs.size());
  const Vec h1 = (params.critic[0].weights * obs + params.critic[0].biases).array().tanh();
  const Vec h2 = (params.critic[1].weights * h1 + params.critic[1].biases).array().tanh();
  return (params.critic[2].weights * h2 + params.critic[2].biases)(0);
}

ForwardCache forward_mlp(const MlpParams& net, const Mat& obs_cols) {
  check_obs_dim(net, obs_cols.rows());
  ForwardCache c;
  c.h1 = ((net[0].weights * obs_cols).colwise() + net[0].biases).array().tanh();
  c.h2 = ((net[1].weights * c.h1).colwise() + net[1].biases).array().tanh();
  c.out = (net[2].weights * c.h2).colwise() + net[2].biases;
  return c;
}

void backward_mlp(const MlpParams& net, const Mat& obs_cols, const ForwardCache& cache, const Mat& dout,
                  MlpParams& grads) {
  grads[2].weights.noalias() += dout * cache.h2.transpose();
  grads[2].biases.noalias() += dout.rowwise().sum();

  Mat dh2 = net[2].weights.transpose() * dout;
  dh2.array() *= 1.0 - cache.h2.array().square();  // tanh'

  grads[1].weights.noalias() += dh2 * cache.h1.transpose();
  grads[1].biases.noalias() += dh2.rowwise().sum();

  Mat dh1 = net[1].weights.transpose() * dh2;
  dh1.array() *= 1.0 - cache.h1.array().square();

  grads[0].weights.noalias() += dh1 * obs_cols.transpose();
  grads[0].biases.noalias() += dh1.rowwise().sum();
}

Vec softmax(const Vec& logits) {
  const double m = logits.maxCoeff();
  Vec e = (logits.array() - m).exp();
  return e / e.sum();
}

std::pair<int, double> sample_action(const Vec& logits, Pcg32& rng) {
  const Vec p = softmax(logits);
  const double u = rng.next_double();
  double acc = 0.0;
  int action = static_cast<int>(p.size()) - 1;
  for (int i = 0; i < p.size(); ++i) {
    acc += p(i);
    if (u < acc) {
      action = i;
      break;
    }
  }
  return {action, log_prob_entropy(logits, action).log_prob};
}

LogProbEntropy log_prob_entropy(const Vec& logits, int action) {
  const double m = logits.maxCoeff();
  const Vec shifted = logits.array() - m;
  const double lse = std::log(shifted.array().exp().sum());
  const Vec log_p = shifted.array() - lse;
  const Vec p = log_p.array().exp();
  return LogProbEntropy{log_p(action), -(p.array() * log_p.array()).sum()};
}

double global_norm(const Gradients& grads) {
  double sq = 0.0;
  for (const MlpParams* net : {&grads.actor, &grads.critic}) {
    for (const DenseLayer& l : *net) {
      sq += l.weights.squaredNorm();
      sq += l.biases.squaredNorm();
    }
  }
  return std::sqrt(sq);
}

Gradients clip_global_norm(Gradients grads, double max_norm) {
  const double norm = global_norm(grads);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (MlpParams* net : {&grads.actor, &grads.critic}) {
      for (DenseLayer& l : *net) {
        l.weights *= scale;
        l.biases *= scale;
      }
    }
  }
  return grads;
}

}  // namespace blockland
