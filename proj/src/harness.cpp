#include "blockland/harness.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "blockland/errors.hpp"
#include "blockland/io.hpp"
#include "blockland/manifest.hpp"

namespace blockland {

namespace {

std::string two_digit_id(const std::string& prefix, int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", index);
  return prefix + buf;
}

double run_episode(const LevelSpec& level, Agent& robot, Agent& human, Pcg32& robot_rng, Pcg32& human_rng) {
  ResetResult r = reset(level);
  robot.begin_episode();
  human.begin_episode();
  EnvState state = r.state;
  Observation obs_robot = r.obs_robot;
  Observation obs_human = r.obs_human;
  double total = 0.0;
  while (!state.terminated && !state.truncated) {
    const Action a_robot = robot.act(obs_robot, robot_rng);
    const Action a_human = human.act(obs_human, human_rng);
    auto [next, res] = step(state, level, a_robot, a_human);
    total += res.reward_robot;
    state = next;
    obs_robot = res.obs_robot;
    obs_human = res.obs_human;
  }
  return total;
}

}  // namespace

PairingResult evaluate_pair(const AgentRef& victim, const AgentRef& opponent, const LevelSpec& level, int episodes,
                            std::uint64_t seed_base) {
  if (episodes <= 0) throw UsageError("evaluate_pair: episodes must be positive");

  auto robot = victim.make_agent();
  auto human = opponent.make_agent();

  PairingResult result;
  result.victim_id = victim.id;
  result.opponent_id = opponent.id;
  result.returns.reserve(static_cast<size_t>(episodes));
  for (int e = 0; e < episodes; ++e) {
    const std::uint64_t episode_seed = seed_base + static_cast<std::uint64_t>(e);
    Pcg32 robot_rng = make_stream(episode_seed, stream_id::kEvalVictim);
    Pcg32 human_rng = make_stream(episode_seed, stream_id::kEvalOpponent);
    result.returns.push_back(run_episode(level, *robot, *human, robot_rng, human_rng));
  }
  result.summary = summarize(result.returns);
  return result;
}

std::vector<std::filesystem::path> train_victims(const LevelSpec& level, const std::string& opponent_tag,
                                                 const std::vector<std::uint64_t>& seeds, const PPOConfig& cfg,
                                                 const std::filesystem::path& out_dir, const std::string& id_prefix) {
  if (opponent_tag != "arand" && opponent_tag != "natural") {
    throw UsageError("victim opponent must be a scripted tag (arand or natural), got '" + opponent_tag + "'");
  }
  for (size_t i = 0; i < seeds.size(); ++i) {
    for (size_t j = i + 1; j < seeds.size(); ++j) {
      if (seeds[i] == seeds[j]) throw UsageError("victim seeds must be distinct");
    }
  }

  const AgentRef opponent = AgentRef::parse(opponent_tag);
  std::vector<std::filesystem::path> checkpoints;
  for (size_t i = 0; i < seeds.size(); ++i) {
    const std::string id = two_digit_id(id_prefix, static_cast<int>(i) + 1);
    const std::filesystem::path run_dir = out_dir / id;
    try {
      const TrainResult r = train(level, AgentId::Robot, opponent, cfg, seeds[i], run_dir);
      checkpoints.push_back(r.final_checkpoint);
    } catch (const std::exception& e) {
      std::cerr << "victim run " << id << " failed: " << e.what() << "\n";
    }
  }
  return checkpoints;
}

std::filesystem::path train_one_adversary(const std::filesystem::path& victim_checkpoint, std::uint64_t seed,
                                          const PPOConfig& cfg, const LevelSpec& level,
                                          const std::filesystem::path& run_dir) {
  const AgentRef victim = AgentRef::parse(victim_checkpoint.string());
  const TrainResult r = train(level, AgentId::Human, victim, cfg, seed, run_dir);
  // Link the adversary to its training victim in the manifest.
  RunManifest m = read_manifest(run_dir);
  m.extra["trained_against_victim"] = victim.id;
  m.extra["victim_digest"] = victim.digest;
  m.extra["victim_checkpoint"] = victim_checkpoint.string();
  write_manifest(run_dir, m);
  return r.final_checkpoint;
}

std::vector<std::filesystem::path> train_adversaries(const std::filesystem::path& victim_checkpoint,
                                                     const std::vector<std::uint64_t>& seeds, const PPOConfig& cfg,
                                                     const LevelSpec& level, const std::filesystem::path& out_dir) {
  const AgentRef victim = AgentRef::parse(victim_checkpoint.string());

  std::vector<std::filesystem::path> checkpoints;
  for (size_t i = 0; i < seeds.size(); ++i) {
    const std::string id = victim.id + "-" + two_digit_id("a", static_cast<int>(i) + 1);
    try {
      checkpoints.push_back(train_one_adversary(victim_checkpoint, seeds[i], cfg, level, out_dir / id));
    } catch (const std::exception& e) {
      std::cerr << "adversary run " << id << " failed: " << e.what() << "\n";
    }
  }
  return checkpoints;
}

std::string adversary_trained_against(const std::filesystem::path& adversary_run_dir) {
  try {
    const RunManifest m = read_manifest(adversary_run_dir);
    return m.extra.value("trained_against_victim", std::string());
  } catch (const std::exception&) {
    return std::string();
  }
}

TransferMatrix build_transfer_matrix(const std::vector<std::filesystem::path>& victim_checkpoints,
                                     const std::vector<std::filesystem::path>& adversary_checkpoints,
                                     const LevelSpec& level, int episodes, std::uint64_t seed_base) {
  TransferMatrix tm;

  std::vector<AgentRef> victims;
  for (const auto& p : victim_checkpoints) {
    victims.push_back(AgentRef::parse(p.string()));
    tm.victim_ids.push_back(victims.back().id);
  }

  std::vector<AgentRef> opponents;
  std::vector<std::string> trained_against;
  opponents.push_back(AgentRef::parse("arand"));
  trained_against.push_back("");
  for (const auto& p : adversary_checkpoints) {
    opponents.push_back(AgentRef::parse(p.string()));
    trained_against.push_back(adversary_trained_against(p.parent_path()));
  }
  for (const AgentRef& o : opponents) tm.opponent_ids.push_back(o.id);

  const auto rows = static_cast<Eigen::Index>(victims.size());
  const auto cols = static_cast<Eigen::Index>(opponents.size());
  tm.means = Eigen::MatrixXd::Constant(rows, cols, std::numeric_limits<double>::quiet_NaN());
  tm.direct.assign(victims.size(), std::vector<bool>(opponents.size(), false));

  for (size_t r = 0; r < victims.size(); ++r) {
    for (size_t c = 0; c < opponents.size(); ++c) {
      const bool direct = !trained_against[c].empty() && trained_against[c] == victims[r].id;
      try {
        PairingResult pr = evaluate_pair(victims[r], opponents[c], level, episodes, seed_base);
        pr.direct_pair = direct;
        tm.means(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = pr.summary.mean;
        tm.pairings.push_back(std::move(pr));
      } catch (const std::exception& e) {
        std::cerr << "pairing (" << victims[r].id << ", " << opponents[c].id << ") failed: " << e.what() << "\n";
      }
      tm.direct[r][c] = direct;
    }
  }
  return tm;
}

double percentage_decrease(double baseline, double attacked) {
  return (baseline - attacked) / baseline * 100.0;
}

void write_pairings_csv(const std::vector<PairingResult>& pairings, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "victim_id,opponent_id,episode_idx,return\n";
  for (const PairingResult& p : pairings) {
    for (size_t e = 0; e < p.returns.size(); ++e) {
      out << p.victim_id << ',' << p.opponent_id << ',' << e << ',' << format_double(p.returns[e]) << '\n';
    }
  }
  write_file(path, out.str());
}

void write_matrix_csv(const TransferMatrix& tm, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "victim_id";
  for (const std::string& o : tm.opponent_ids) out << ',' << o;
  out << '\n';
  for (size_t r = 0; r < tm.victim_ids.size(); ++r) {
    out << tm.victim_ids[r];
    for (size_t c = 0; c < tm.opponent_ids.size(); ++c) {
      const double v = tm.means(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      out << ',' << (std::isnan(v) ? "" : format_double(v));
    }
    out << '\n';
  }
  write_file(path, out.str());
}

std::vector<PairingResult> read_pairings_csv(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty pairings file: " + path.string());
  if (line != "victim_id,opponent_id,episode_idx,return") {
    throw ConfigError("unexpected pairings header in " + path.string() + ": " + line);
  }

  std::vector<PairingResult> pairings;
  auto find = [&pairings](const std::string& v, const std::string& o) -> PairingResult& {
    for (PairingResult& p : pairings) {
      if (p.victim_id == v && p.opponent_id == o) return p;
    }
    pairings.push_back(PairingResult{});
    pairings.back().victim_id = v;
    pairings.back().opponent_id = o;
    return pairings.back();
  };

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string victim, opponent, idx, ret;
    if (!std::getline(row, victim, ',') || !std::getline(row, opponent, ',') || !std::getline(row, idx, ',') ||
        !std::getline(row, ret)) {
      throw ConfigError("bad pairings row at line " + std::to_string(line_no) + " of " + path.string());
    }
    find(victim, opponent).returns.push_back(parse_double(ret));
  }
  for (PairingResult& p : pairings) p.summary = summarize(p.returns);
  return pairings;
}

}  // namespace blockland
