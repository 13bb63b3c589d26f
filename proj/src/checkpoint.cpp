#include "blockland/checkpoint.hpp"

#include <json.hpp>

#include "blockland/errors.hpp"
#include "blockland/io.hpp"

namespace blockland {

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Mat matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ConfigError("checkpoint field '" + field + "' must be a 2-D array");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw ConfigError("checkpoint field '" + field + "' is ragged");
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw ConfigError("checkpoint field '" + field + "' has a non-numeric entry");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

Vec vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("checkpoint field '" + field + "' must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError("checkpoint field '" + field + "' has a non-numeric entry");
    v(i) = j[i].get<double>();
  }
  return v;
}

json net_to_json(const MlpParams& net) {
  json layers = json::array();
  for (const DenseLayer& l : net) {
    layers.push_back(json{{"weights", matrix_to_json(l.weights)}, {"biases", vector_to_json(l.biases)}});
  }
  return layers;
}

MlpParams net_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("checkpoint field '" + field + "' must list exactly 3 layers");
  MlpParams net;
  for (int i = 0; i < 3; ++i) {
    const std::string lf = field + "[" + std::to_string(i) + "]";
    if (!j[i].contains("weights") || !j[i].contains("biases")) {
      throw ConfigError("checkpoint field '" + lf + "' must have weights and biases");
    }
    net[i].weights = matrix_from_json(j[i].at("weights"), lf + ".weights");
    net[i].biases = vector_from_json(j[i].at("biases"), lf + ".biases");
  }
  return net;
}

void check_finite(const ActorCriticParams& p) {
  for (const MlpParams* net : {&p.actor, &p.critic}) {
    for (const DenseLayer& l : *net) {
      if (!l.weights.allFinite() || !l.biases.allFinite()) {
        throw NumericError("refusing to serialize non-finite parameters");
      }
    }
  }
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ActorCriticParams& params, const CheckpointMeta& meta,
                     const AdamState* optimizer) {
  check_architecture(params);
  check_finite(params);

  json j;
  j["meta"] = json{
      {"architecture",
       json{{"obs_dim", kObsDim},
            {"n_actions", kNumActions},
            {"hidden", {kHiddenSize, kHiddenSize}},
            {"activation", meta.activation},
            {"init", meta.init}}},
      {"seed", meta.seed},
      {"trained_env_steps", meta.trained_env_steps},
      {"opponent_tag", meta.opponent_tag},
      {"role", meta.role},
  };
  j["actor"] = net_to_json(params.actor);
  j["critic"] = net_to_json(params.critic);
  if (optimizer != nullptr) {
    j["optimizer"] = json{
        {"m", json{{"actor", net_to_json(optimizer->m.actor)}, {"critic", net_to_json(optimizer->m.critic)}}},
        {"v", json{{"actor", net_to_json(optimizer->v.actor)}, {"critic", net_to_json(optimizer->v.critic)}}},
        {"step_count", optimizer->step_count},
        {"beta1", optimizer->beta1},
        {"beta2", optimizer->beta2},
        {"epsilon", optimizer->epsilon},
    };
  }
  write_file(path, j.dump() + "\n");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse checkpoint " + path.string() + ": " + e.what());
  }

  try {
    Checkpoint ck;
    if (!j.contains("actor") || !j.contains("critic")) throw ConfigError("checkpoint missing actor/critic fields");
    ck.params.actor = net_from_json(j.at("actor"), "actor");
    ck.params.critic = net_from_json(j.at("critic"), "critic");
    check_architecture(ck.params);

    const json& meta = j.value("meta", json::object());
    ck.meta.seed = meta.value("seed", std::uint64_t{0});
    ck.meta.trained_env_steps = meta.value("trained_env_steps", 0L);
    ck.meta.opponent_tag = meta.value("opponent_tag", std::string());
    ck.meta.role = meta.value("role", std::string("robot"));
    if (meta.contains("architecture")) {
      const json& arch = meta.at("architecture");
      ck.meta.activation = arch.value("activation", std::string("tanh"));
      ck.meta.init = arch.value("init", std::string());
      if (arch.value("obs_dim", kObsDim) != kObsDim || arch.value("n_actions", kNumActions) != kNumActions) {
        throw ConfigError("checkpoint meta.architecture does not match the 12-input/6-action contract");
      }
    }

    if (j.contains("optimizer")) {
      const json& opt = j.at("optimizer");
      AdamState s;
      s.m.actor = net_from_json(opt.at("m").at("actor"), "optimizer.m.actor");
      s.m.critic = net_from_json(opt.at("m").at("critic"), "optimizer.m.critic");
      s.v.actor = net_from_json(opt.at("v").at("actor"), "optimizer.v.actor");
      s.v.critic = net_from_json(opt.at("v").at("critic"), "optimizer.v.critic");
      s.step_count = opt.at("step_count").get<long>();
      s.beta1 = opt.value("beta1", 0.9);
      s.beta2 = opt.value("beta2", 0.999);
      s.epsilon = opt.value("epsilon", 1e-5);
      ck.optimizer = std::move(s);
    }
    return ck;
  } catch (const json::exception& e) {
    throw ConfigError("malformed checkpoint " + path.string() + ": " + e.what());
  }
}

std::string checkpoint_digest(const std::filesystem::path& path) {
  return fnv1a64_hex(read_file(path));
}

}  // namespace blockland
