#include "blockland/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "blockland/errors.hpp"
#include "blockland/io.hpp"
#include "blockland/svg.hpp"

namespace blockland {

namespace {

constexpr std::array<const char*, kObsDim> kObsDimNames = {"self_x", "self_y", "other_x",   "other_y",
                                                           "box1_x", "box1_y", "box2_x",    "box2_y",
                                                           "cart_x", "cart_y", "self_held", "other_held"};

Vec column_l1(const Mat& w) {
  return w.cwiseAbs().colwise().sum().transpose();
}

std::array<double, kNumObsBlocks> block_sums(const Vec& per_dim) {
  std::array<double, kNumObsBlocks> blocks{};
  for (int b = 0; b < kNumObsBlocks; ++b) {
    double s = 0.0;
    for (int j = kObsBlockRanges[b].first; j < kObsBlockRanges[b].second; ++j) s += per_dim(j);
    blocks[b] = s;
  }
  return blocks;
}

}  // namespace

InputWeightNorms input_weight_l1(const ActorCriticParams& params) {
  check_architecture(params);
  InputWeightNorms n;
  n.actor_per_dim = column_l1(params.actor[0].weights);
  n.critic_per_dim = column_l1(params.critic[0].weights);
  n.actor_blocks = block_sums(n.actor_per_dim);
  n.critic_blocks = block_sums(n.critic_per_dim);
  return n;
}

WeightNormSeries weight_norm_series(const std::filesystem::path& run_dir) {
  std::vector<std::filesystem::path> files;
  const std::filesystem::path ckpt_dir = run_dir / "checkpoints";
  if (std::filesystem::is_directory(ckpt_dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(ckpt_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
  }
  if (std::filesystem::exists(run_dir / "final.json")) files.push_back(run_dir / "final.json");
  if (files.size() < 2) {
    throw UsageError("weight_norm_series needs at least 2 checkpoints under " + run_dir.string());
  }

  std::vector<std::pair<long, InputWeightNorms>> rows;
  for (const auto& f : files) {
    try {
      const Checkpoint ck = load_checkpoint(f);
      rows.emplace_back(ck.meta.trained_env_steps, input_weight_l1(ck.params));
    } catch (const std::exception& e) {
      std::cerr << "skipping checkpoint " << f << ": " << e.what() << "\n";
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  WeightNormSeries series;
  for (auto& [steps, norms] : rows) {
    series.env_steps.push_back(steps);
    series.rows.push_back(std::move(norms));
  }
  return series;
}

void write_weight_norm_csv(const WeightNormSeries& series, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "env_steps";
  for (const char* d : kObsDimNames) out << ",actor_" << d;
  for (const char* b : kObsBlockNames) out << ",actor_block_" << b;
  for (const char* d : kObsDimNames) out << ",critic_" << d;
  for (const char* b : kObsBlockNames) out << ",critic_block_" << b;
  out << '\n';
  for (size_t i = 0; i < series.rows.size(); ++i) {
    const InputWeightNorms& n = series.rows[i];
    out << series.env_steps[i];
    for (int j = 0; j < kObsDim; ++j) out << ',' << format_double(n.actor_per_dim(j));
    for (int b = 0; b < kNumObsBlocks; ++b) out << ',' << format_double(n.actor_blocks[b]);
    for (int j = 0; j < kObsDim; ++j) out << ',' << format_double(n.critic_per_dim(j));
    for (int b = 0; b < kNumObsBlocks; ++b) out << ',' << format_double(n.critic_blocks[b]);
    out << '\n';
  }
  write_file(path, out.str());
}

void write_weight_norm_svg(const WeightNormSeries& series, const std::filesystem::path& path) {
  const double width = svg_style::kChartWidth;
  const double height = svg_style::kChartHeight;
  SvgDoc doc(width, height);

  const double panel_w = (width - 120.0) / 2.0;
  const double top = 40.0, bottom = height - 50.0;

  double max_norm = 0.0;
  for (const InputWeightNorms& n : series.rows) {
    for (int b = 0; b < kNumObsBlocks; ++b) max_norm = std::max({max_norm, n.actor_blocks[b], n.critic_blocks[b]});
  }
  if (max_norm <= 0.0) max_norm = 1.0;
  const double max_steps = static_cast<double>(series.env_steps.back());

  for (int panel = 0; panel < 2; ++panel) {
    const double left = 60.0 + panel * (panel_w + 40.0);
    const LinearScale sx{0.0, std::max(max_steps, 1.0), left, left + panel_w};
    const LinearScale sy{0.0, max_norm * 1.05, bottom, top};

    doc.line(left, bottom, left + panel_w, bottom, svg_style::kAxisColor);
    doc.line(left, bottom, left, top, svg_style::kAxisColor);
    doc.text(left + panel_w / 2.0, 24.0, panel == 0 ? "actor input-layer L1 norms" : "critic input-layer L1 norms",
             12.0, "middle");
    for (const double t : axis_ticks(0.0, max_norm * 1.05, 5)) {
      doc.line(left - 3.0, sy(t), left, sy(t), svg_style::kAxisColor);
      doc.text(left - 6.0, sy(t) + 3.5, format_double(t), 9.0, "end");
    }
    for (const double t : axis_ticks(0.0, max_steps, 4)) {
      doc.line(sx(t), bottom, sx(t), bottom + 3.0, svg_style::kAxisColor);
      doc.text(sx(t), bottom + 14.0, format_double(t), 9.0, "middle");
    }
    doc.text(left + panel_w / 2.0, height - 12.0, "env steps", 10.0, "middle");

    for (int b = 0; b < kNumObsBlocks; ++b) {
      std::vector<std::pair<double, double>> pts;
      for (size_t i = 0; i < series.rows.size(); ++i) {
        const double v = panel == 0 ? series.rows[i].actor_blocks[b] : series.rows[i].critic_blocks[b];
        pts.emplace_back(sx(static_cast<double>(series.env_steps[i])), sy(v));
      }
      doc.polyline(pts, svg_style::kSeriesPalette[b]);
    }
  }

  // legend
  double lx = 60.0;
  for (int b = 0; b < kNumObsBlocks; ++b) {
    doc.rect(lx, height - 40.0, 10.0, 10.0, svg_style::kSeriesPalette[b]);
    doc.text(lx + 14.0, height - 31.0, kObsBlockNames[b], 10.0);
    lx += 120.0;
  }

  write_file(path, doc.str());
}

Heatmap visitation_heatmap(const AgentRef& policy, const LevelSpec& level, int episodes, double cell_size,
                           std::uint64_t seed) {
  if (episodes <= 0) throw UsageError("visitation_heatmap: episodes must be positive");
  if (!(cell_size > 0.0)) throw UsageError("visitation_heatmap: cell_size must be positive");

  Heatmap map;
  map.cell_size = cell_size;
  map.nx = static_cast<int>(std::ceil((level.x_max - level.road_x_hi) / cell_size));
  map.ny = static_cast<int>(std::ceil(level.y_max / cell_size));
  map.counts = Eigen::MatrixXd::Zero(map.nx, map.ny);
  map.episodes = episodes;

  auto cell_of = [&](const Eigen::Vector2d& pos) {
    const int ix = std::min(static_cast<int>((pos.x() - level.road_x_hi) / cell_size), map.nx - 1);
    const int iy = std::min(static_cast<int>(pos.y() / cell_size), map.ny - 1);
    return std::pair<int, int>{std::max(ix, 0), std::max(iy, 0)};
  };

  auto human = policy.make_agent();
  NoOpAgent robot;  // stationary robot isolates the human's motion
  std::set<std::pair<int, int>> union_cells;
  long distinct_sum = 0;

  for (int e = 0; e < episodes; ++e) {
    Pcg32 human_rng = make_stream(seed + static_cast<std::uint64_t>(e), stream_id::kHeatmap);
    Pcg32 robot_rng = make_stream(seed + static_cast<std::uint64_t>(e), stream_id::kEvalVictim);
    ResetResult r = reset(level);
    human->begin_episode();
    EnvState state = r.state;
    Observation obs_robot = r.obs_robot;
    Observation obs_human = r.obs_human;
    std::set<std::pair<int, int>> episode_cells;
    while (!state.terminated && !state.truncated) {
      const Action a_robot = robot.act(obs_robot, robot_rng);
      const Action a_human = human->act(obs_human, human_rng);
      auto [next, res] = step(state, level, a_robot, a_human);
      state = next;
      obs_robot = res.obs_robot;
      obs_human = res.obs_human;
      const auto c = cell_of(state.human_pos);
      map.counts(c.first, c.second) += 1.0;
      map.steps_counted += 1;
      episode_cells.insert(c);
    }
    distinct_sum += static_cast<long>(episode_cells.size());
    union_cells.insert(episode_cells.begin(), episode_cells.end());
  }

  map.mean_distinct_cells_per_episode = static_cast<double>(distinct_sum) / static_cast<double>(episodes);
  map.distinct_cells_total = static_cast<long>(union_cells.size());
  return map;
}

void write_heatmap_csv(const Heatmap& map, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "cell_ix,cell_iy,count\n";
  for (int ix = 0; ix < map.nx; ++ix) {
    for (int iy = 0; iy < map.ny; ++iy) {
      out << ix << ',' << iy << ',' << format_double(map.counts(ix, iy)) << '\n';
    }
  }
  write_file(path, out.str());
}

void write_heatmap_svg(const Heatmap& map, const std::filesystem::path& path) {
  const double cell_px = 24.0;
  const double left = 50.0, top = 30.0;
  const double width = left + map.nx * cell_px + 30.0;
  const double height = top + map.ny * cell_px + 50.0;
  SvgDoc doc(width, height);

  const double max_count = std::max(map.counts.maxCoeff(), 1.0);
  for (int ix = 0; ix < map.nx; ++ix) {
    for (int iy = 0; iy < map.ny; ++iy) {
      const double v = map.counts(ix, iy) / max_count;
      // white -> deep blue
      const int rch = static_cast<int>(std::lround(255.0 - v * (255.0 - 68.0)));
      const int gch = static_cast<int>(std::lround(255.0 - v * (255.0 - 119.0)));
      const int bch = static_cast<int>(std::lround(255.0 - v * (255.0 - 170.0)));
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", rch, gch, bch);
      // row 0 at the bottom
      doc.rect(left + ix * cell_px, top + (map.ny - 1 - iy) * cell_px, cell_px, cell_px, color, "#e0e0e0");
    }
  }
  doc.text(left, 20.0, "visitation counts (max " + format_double(max_count) + ")", 11.0);
  doc.text(left, height - 16.0,
           "episodes " + std::to_string(map.episodes) + ", mean distinct cells/episode " +
               format_double(map.mean_distinct_cells_per_episode),
           10.0);
  write_file(path, doc.str());
}

double silverman_bandwidth(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double sd = stddev_of(xs);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = sd;  // IQR can degenerate on small samples
  if (spread <= 0.0) return 0.0;
  return 0.9 * spread * std::pow(static_cast<double>(xs.size()), -0.2);
}

std::vector<double> gaussian_kde(const std::vector<double>& xs, const std::vector<double>& eval_points,
                                 double bandwidth) {
  if (bandwidth <= 0.0) throw UsageError("gaussian_kde: bandwidth must be positive");
  const double norm = 1.0 / (static_cast<double>(xs.size()) * bandwidth * std::sqrt(2.0 * M_PI));
  std::vector<double> density;
  density.reserve(eval_points.size());
  for (const double p : eval_points) {
    double s = 0.0;
    for (const double x : xs) {
      const double z = (p - x) / bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    density.push_back(s * norm);
  }
  return density;
}

namespace {

struct PairingLayout {
  const PairingResult* pairing;
  double x_center;
};

void draw_violins(const std::vector<PairingResult>& pairings, const std::filesystem::path& path) {
  const double width = std::max<double>(svg_style::kChartWidth, 60.0 + 34.0 * pairings.size());
  const double height = svg_style::kChartHeight;
  SvgDoc doc(width, height);
  const double left = 60.0, right = width - 20.0, top = 30.0, bottom = height - 70.0;

  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const PairingResult& p : pairings) {
    for (const double r : p.returns) {
      lo = first ? r : std::min(lo, r);
      hi = first ? r : std::max(hi, r);
      first = false;
    }
  }
  const double pad = std::max((hi - lo) * 0.1, 0.5);
  const LinearScale sy{lo - pad, hi + pad, bottom, top};

  doc.line(left, bottom, left, top, svg_style::kAxisColor);
  for (const double t : axis_ticks(lo - pad, hi + pad, 7)) {
    doc.line(left - 3.0, sy(t), left, sy(t), svg_style::kAxisColor);
    doc.text(left - 6.0, sy(t) + 3.5, format_double(t), 9.0, "end");
  }
  doc.text(18.0, (top + bottom) / 2.0, "return", 10.0, "middle");

  const double slot_w = (right - left) / std::max<double>(1.0, static_cast<double>(pairings.size()));
  const double half_w = std::min(14.0, slot_w * 0.42);

  for (size_t i = 0; i < pairings.size(); ++i) {
    const PairingResult& p = pairings[i];
    const double xc = left + slot_w * (static_cast<double>(i) + 0.5);
    const std::string color = p.opponent_id == "arand" ? svg_style::kBaselineColor : svg_style::kAttackColor;

    const double bw = silverman_bandwidth(p.returns);
    if (bw > 0.0) {
      const double vmin = p.summary.min - 3.0 * bw;
      const double vmax = p.summary.max + 3.0 * bw;
      std::vector<double> eval;
      constexpr int kPts = 41;
      for (int k = 0; k < kPts; ++k) eval.push_back(vmin + (vmax - vmin) * k / (kPts - 1));
      const std::vector<double> dens = gaussian_kde(p.returns, eval, bw);
      const double dmax = *std::max_element(dens.begin(), dens.end());
      std::vector<std::pair<double, double>> pts;
      for (int k = 0; k < kPts; ++k) pts.emplace_back(xc - half_w * dens[k] / dmax, sy(eval[k]));
      for (int k = kPts - 1; k >= 0; --k) pts.emplace_back(xc + half_w * dens[k] / dmax, sy(eval[k]));
      doc.polygon(pts, color);
    } else {
      // degenerate distribution: all returns identical, drawn as a bar
      doc.rect(xc - half_w, sy(p.returns[0]) - 2.0, 2.0 * half_w, 4.0, color);
    }
    doc.circle(xc, sy(p.summary.median), 2.0, "#ffffff");
    doc.text(xc, bottom + 12.0 + (i % 2) * 11.0, p.victim_id + "/" + p.opponent_id, 7.5, "middle");
  }

  doc.rect(left, height - 28.0, 10.0, 10.0, svg_style::kBaselineColor);
  doc.text(left + 14.0, height - 19.0, "vs arand", 10.0);
  doc.rect(left + 100.0, height - 28.0, 10.0, 10.0, svg_style::kAttackColor);
  doc.text(left + 114.0, height - 19.0, "vs adversary", 10.0);

  write_file(path, doc.str());
}

void draw_mean_bars(const std::vector<PairingResult>& pairings, const std::filesystem::path& path) {
  std::vector<std::string> victims;
  std::vector<std::string> opponents;
  for (const PairingResult& p : pairings) {
    if (std::find(victims.begin(), victims.end(), p.victim_id) == victims.end()) victims.push_back(p.victim_id);
    if (std::find(opponents.begin(), opponents.end(), p.opponent_id) == opponents.end())
      opponents.push_back(p.opponent_id);
  }

  const double width = std::max<double>(svg_style::kChartWidth,
                                        80.0 + victims.size() * (opponents.size() * 9.0 + 24.0));
  const double height = svg_style::kChartHeight;
  SvgDoc doc(width, height);
  const double left = 60.0, right = width - 20.0, top = 30.0, bottom = height - 60.0;

  double lo = 0.0, hi = 0.0;
  for (const PairingResult& p : pairings) {
    lo = std::min(lo, p.summary.mean);
    hi = std::max(hi, p.summary.mean);
  }
  const double pad = std::max((hi - lo) * 0.1, 0.5);
  const LinearScale sy{lo - pad, hi + pad, bottom, top};

  doc.line(left, sy(0.0), right, sy(0.0), svg_style::kAxisColor);
  doc.line(left, bottom, left, top, svg_style::kAxisColor);
  for (const double t : axis_ticks(lo - pad, hi + pad, 7)) {
    doc.line(left - 3.0, sy(t), left, sy(t), svg_style::kAxisColor);
    doc.text(left - 6.0, sy(t) + 3.5, format_double(t), 9.0, "end");
  }
  doc.text(18.0, (top + bottom) / 2.0, "mean return", 10.0, "middle");

  const double group_w = (right - left) / static_cast<double>(victims.size());
  const double bar_w = std::min(8.0, group_w * 0.8 / static_cast<double>(opponents.size()));

  for (size_t v = 0; v < victims.size(); ++v) {
    const double gx = left + group_w * (static_cast<double>(v) + 0.1);
    doc.text(left + group_w * (static_cast<double>(v) + 0.5), bottom + 16.0, victims[v], 10.0, "middle");
    for (size_t o = 0; o < opponents.size(); ++o) {
      const PairingResult* found = nullptr;
      for (const PairingResult& p : pairings) {
        if (p.victim_id == victims[v] && p.opponent_id == opponents[o]) {
          found = &p;
          break;
        }
      }
      if (found == nullptr) continue;
      const std::string color = opponents[o] == "arand"
                                    ? svg_style::kBaselineColor
                                    : svg_style::kSeriesPalette[1 + (o % 5)];
      const double x = gx + bar_w * static_cast<double>(o);
      const double y0 = sy(0.0), y1 = sy(found->summary.mean);
      doc.rect(x, std::min(y0, y1), bar_w * 0.9, std::abs(y1 - y0), color);
    }
  }

  write_file(path, doc.str());
}

}  // namespace

std::vector<ReturnReportRow> return_report(const std::vector<PairingResult>& pairings,
                                           const std::filesystem::path& out_dir) {
  if (pairings.empty()) throw UsageError("return_report: no pairings");

  std::map<std::string, double> baselines;
  for (const PairingResult& p : pairings) {
    if (p.opponent_id == "arand") baselines[p.victim_id] = p.summary.mean;
  }

  std::vector<ReturnReportRow> rows;
  std::ostringstream csv;
  csv << "victim_id,opponent_id,episodes,mean,std,min,q1,median,q3,max,pct_decrease_vs_arand\n";
  for (const PairingResult& p : pairings) {
    if (p.returns.empty()) {
      std::cerr << "omitting empty pairing (" << p.victim_id << ", " << p.opponent_id << ")\n";
      continue;
    }
    ReturnReportRow row;
    row.victim_id = p.victim_id;
    row.opponent_id = p.opponent_id;
    row.episodes = static_cast<int>(p.returns.size());
    row.summary = p.summary;
    const auto base = baselines.find(p.victim_id);
    row.pct_decrease_vs_baseline =
        (base != baselines.end() && p.opponent_id != "arand") ? percentage_decrease(base->second, p.summary.mean) : 0.0;
    rows.push_back(row);

    csv << row.victim_id << ',' << row.opponent_id << ',' << row.episodes << ',' << format_double(row.summary.mean)
        << ',' << format_double(row.summary.stddev) << ',' << format_double(row.summary.min) << ','
        << format_double(row.summary.q1) << ',' << format_double(row.summary.median) << ','
        << format_double(row.summary.q3) << ',' << format_double(row.summary.max) << ','
        << format_double(row.pct_decrease_vs_baseline) << '\n';
  }

  write_file(out_dir / "summary.csv", csv.str());
  draw_violins(pairings, out_dir / "violins.svg");
  draw_mean_bars(pairings, out_dir / "means.svg");
  return rows;
}

}  // namespace blockland
