#pragma once

#include <memory>
#include <string>

#include "blockland/checkpoint.hpp"
#include "blockland/env.hpp"
#include "blockland/rng.hpp"
#include "blockland/scripted.hpp"

namespace blockland {

// One side's policy during rollouts and evaluation. Stateful agents
// (natural walk) reset per episode via begin_episode().
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_episode() {}
  virtual Action act(const Observation& obs, Pcg32& rng) = 0;
};

class ArandAgent final : public Agent {
 public:
  Action act(const Observation&, Pcg32& rng) override { return arand_action(rng); }
};

class NaturalWalkAgent final : public Agent {
 public:
  void begin_episode() override { state_ = NaturalWalkState{}; }
  Action act(const Observation&, Pcg32& rng) override {
    auto [a, next] = natural_walk_action(state_, rng);
    state_ = next;
    return a;
  }

 private:
  NaturalWalkState state_;
};

// Frozen checkpoint policy; samples stochastically from its categorical head.
class PolicyAgent final : public Agent {
 public:
  explicit PolicyAgent(std::shared_ptr<const ActorCriticParams> params) : params_(std::move(params)) {}
  Action act(const Observation& obs, Pcg32& rng) override {
    return static_cast<Action>(sample_action(forward_actor(*params_, obs), rng).first);
  }

 private:
  std::shared_ptr<const ActorCriticParams> params_;
};

class NoOpAgent final : public Agent {
 public:
  Action act(const Observation&, Pcg32&) override { return Action::NoOp; }
};

// Resolves a policy selector: "arand", "natural", or a checkpoint path.
// Checkpoints are loaded once; make_agent() hands out lightweight views.
struct AgentRef {
  enum class Kind { Arand, Natural, Checkpoint, NoOp };

  Kind kind = Kind::Arand;
  std::string selector;                          // as given on the CLI
  std::string id;                                // display id for reports
  std::string digest;                            // checkpoint digest, empty for scripted
  std::shared_ptr<const Checkpoint> checkpoint;  // only for Kind::Checkpoint

  static AgentRef parse(const std::string& selector);
  static AgentRef noop();

  std::unique_ptr<Agent> make_agent() const;

  // Identity string for manifests: the tag itself, or "checkpoint:<digest>".
  std::string identity() const;
};

}  // namespace blockland
