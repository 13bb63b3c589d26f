#include "blockland/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blockland/errors.hpp"

namespace blockland {

namespace {

LossStats ppo_loss_impl(const ActorCriticParams& params, const Minibatch& batch, const PpoLossSpec& spec,
                        Gradients* grads_out) {
  const Eigen::Index b = batch.obs.cols();
  if (b == 0 || static_cast<Eigen::Index>(batch.actions.size()) != b || batch.old_log_probs.size() != b ||
      batch.advantages.size() != b || batch.return_targets.size() != b) {
    throw UsageError("inconsistent minibatch field sizes");
  }

  const ForwardCache actor = forward_mlp(params.actor, batch.obs);
  const ForwardCache critic = forward_mlp(params.critic, batch.obs);
  const double inv_b = 1.0 / static_cast<double>(b);
  const double eps = spec.clip_range;

  Mat dlogits;  // filled only when differentiating
  Mat dvalue;
  if (grads_out != nullptr) {
    dlogits = Mat::Zero(actor.out.rows(), b);
    dvalue = Mat::Zero(1, b);
  }

  LossStats stats;
  for (Eigen::Index j = 0; j < b; ++j) {
    const Vec logits = actor.out.col(j);
    const double m = logits.maxCoeff();
    const Vec shifted = logits.array() - m;
    const double lse = std::log(shifted.array().exp().sum());
    const Vec log_p = shifted.array() - lse;
    const Vec p = log_p.array().exp();

    const int a = batch.actions[static_cast<size_t>(j)];
    const double lp_new = log_p(a);
    const double adv = batch.advantages(j);
    const double ratio = std::exp(lp_new - batch.old_log_probs(j));
    const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
    const double surr1 = ratio * adv;
    const double surr2 = clipped * adv;
    const double entropy = -(p.array() * log_p.array()).sum();

    stats.policy += -std::min(surr1, surr2);
    stats.entropy += entropy;
    stats.clip_fraction += std::abs(ratio - 1.0) > eps ? 1.0 : 0.0;
    stats.approx_kl += batch.old_log_probs(j) - lp_new;

    const double verr = critic.out(0, j) - batch.return_targets(j);
    stats.value += verr * verr;

    if (grads_out != nullptr) {
      // min(surr1, surr2): the clipped branch has zero derivative wherever
      // it is selected strictly (clamp saturated); ties fall to surr1.
      const double dsurr_dlp = surr1 <= surr2 ? -adv * ratio * inv_b : 0.0;
      Vec g = -dsurr_dlp * p;
      g(a) += dsurr_dlp;
      // - ent_coef * mean(H): dH/dlogit_k = -p_k (log p_k + H)
      g.array() += spec.ent_coef * inv_b * p.array() * (log_p.array() + entropy);
      dlogits.col(j) = g;
      dvalue(0, j) = spec.vf_coef * 2.0 * verr * inv_b;
    }
  }

  stats.policy *= inv_b;
  stats.value *= inv_b;
  stats.entropy *= inv_b;
  stats.clip_fraction *= inv_b;
  stats.approx_kl *= inv_b;
  stats.total = stats.policy + spec.vf_coef * stats.value - spec.ent_coef * stats.entropy;

  if (!std::isfinite(stats.total)) {
    throw NumericError("non-finite PPO loss: policy=" + std::to_string(stats.policy) +
                       " value=" + std::to_string(stats.value) + " entropy=" + std::to_string(stats.entropy));
  }

  if (grads_out != nullptr) {
    backward_mlp(params.actor, batch.obs, actor, dlogits, grads_out->actor);
    backward_mlp(params.critic, batch.obs, critic, dvalue, grads_out->critic);
  }
  return stats;
}

}  // namespace

LossStats ppo_loss(const ActorCriticParams& params, const Minibatch& batch, const PpoLossSpec& spec) {
  return ppo_loss_impl(params, batch, spec, nullptr);
}

std::pair<LossStats, Gradients> ppo_loss_backward(const ActorCriticParams& params, const Minibatch& batch,
                                                  const PpoLossSpec& spec) {
  Gradients grads = zero_gradients_like(params);
  const LossStats stats = ppo_loss_impl(params, batch, spec, &grads);
  return {stats, std::move(grads)};
}

}  // namespace blockland
