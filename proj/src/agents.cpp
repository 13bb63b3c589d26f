#include "blockland/agents.hpp"

#include <filesystem>

#include "blockland/errors.hpp"

namespace blockland {

AgentRef AgentRef::parse(const std::string& selector) {
  AgentRef ref;
  ref.selector = selector;
  if (selector == "arand") {
    ref.kind = Kind::Arand;
    ref.id = "arand";
  } else if (selector == "natural") {
    ref.kind = Kind::Natural;
    ref.id = "natural";
  } else {
    if (!std::filesystem::exists(selector)) {
      throw UsageError("policy selector '" + selector + "' is neither a scripted tag (arand, natural) nor a readable checkpoint path");
    }
    ref.kind = Kind::Checkpoint;
    ref.checkpoint = std::make_shared<Checkpoint>(load_checkpoint(selector));
    ref.digest = checkpoint_digest(selector);
    ref.id = std::filesystem::path(selector).stem().string();
    if (ref.id == "final") {
      // run_dir/final.json -> use the run directory's name as the id
      ref.id = std::filesystem::path(selector).parent_path().filename().string();
    }
  }
  return ref;
}

AgentRef AgentRef::noop() {
  AgentRef ref;
  ref.kind = Kind::NoOp;
  ref.selector = "noop";
  ref.id = "noop";
  return ref;
}

std::unique_ptr<Agent> AgentRef::make_agent() const {
  switch (kind) {
    case Kind::Arand:
      return std::make_unique<ArandAgent>();
    case Kind::Natural:
      return std::make_unique<NaturalWalkAgent>();
    case Kind::NoOp:
      return std::make_unique<NoOpAgent>();
    case Kind::Checkpoint:
      return std::make_unique<PolicyAgent>(
          std::shared_ptr<const ActorCriticParams>(checkpoint, &checkpoint->params));
  }
  throw UsageError("unknown agent kind");
}

std::string AgentRef::identity() const {
  if (kind == Kind::Checkpoint) return "checkpoint:" + digest;
  return id;
}

}  // namespace blockland
