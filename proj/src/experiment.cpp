#include "mwl/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mwl/metrics.hpp"
#include "mwl/scenario_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mwl {

namespace {

using nlohmann::json;

json run_to_json(const RunResult& r, std::uint64_t seed, const ObjectiveSpec& obj) {
  json j;
  j["seed"] = seed;
  j["slots"] = r.averages.slots();
  j["f_avg"] = r.f_avg_final;
  j["xbar"] = r.averages.xbar();
  j["gammabar"] = r.averages.gammabar();
  j["qbar"] = r.averages.qbar();
  j["ubar"] = r.averages.ubar();
  j["abszbar"] = r.averages.abszbar();
  j["exploration_count"] = r.exploration_count;
  j["exploration_count_per_type"] = r.exploration_count_per_type;
  j["telescope_max_dev"] = r.telescope_max_dev;
  j["lemma1_max_excess"] = r.lemma1_max_excess;

  const double t = static_cast<double>(std::max<SlotIndex>(r.averages.slots(), 1));
  Vec q_over_t(r.final_state.Q.size()), u_over_t(r.final_state.U.size()),
      absz_over_t(r.final_state.Z.size());
  for (std::size_t i = 0; i < q_over_t.size(); ++i) q_over_t[i] = r.final_state.Q[i] / t;
  for (std::size_t i = 0; i < u_over_t.size(); ++i) u_over_t[i] = r.final_state.U[i] / t;
  for (std::size_t i = 0; i < absz_over_t.size(); ++i) {
    absz_over_t[i] = std::abs(r.final_state.Z[i]) / t;
  }
  j["final"] = {{"q_over_t", q_over_t}, {"u_over_t", u_over_t}, {"absz_over_t", absz_over_t}};

  if (!r.checkpoints.empty()) {
    const CheckpointRow& last = r.checkpoints.back();
    j["final"]["resid"] = last.resid;
    j["final"]["V"] = last.v;
    j["final"]["W"] = last.w;
  }
  (void)obj;

  j["audit"] = {{"buffer_entries_on_exploration_slots", r.audit.buffer_entries_on_exploration_slots},
                {"recorded_count_matches", r.audit.recorded_count_matches},
                {"greedy_always_argmin", r.audit.greedy_always_argmin},
                {"tk_mean", r.audit.tk_mean},
                {"max_abs_z_step", r.audit.max_abs_z_step}};
  return j;
}

}  // namespace

void ExperimentConfig::validate() const {
  schedule.validate();
  if (theta < 0.0 || theta >= 1.0) throw std::invalid_argument("config: theta must lie in [0, 1)");
  if (sigma && *sigma <= 0.0) throw std::invalid_argument("config: sigma must be positive");
  if (horizon < 1) throw std::invalid_argument("config: horizon must be at least 1");
  if (seeds.empty()) throw std::invalid_argument("config: seed list is empty");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be at least 1");
  if (scenario.empty()) throw std::invalid_argument("config: scenario is required");
}

std::string ExperimentConfig::stem() const {
  if (!label.empty()) return label;
  std::string base = scenario;
  const auto slash = base.find_last_of("/\\");
  if (slash != std::string::npos) base = base.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return base + "_" + to_string(approach);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range));
    const std::uint64_t hi = std::stoull(text.substr(range + 2));
    if (hi < lo) throw std::invalid_argument("seeds: range '" + text + "' is reversed");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (seeds.empty()) throw std::invalid_argument("seeds: could not parse '" + text + "'");
  return seeds;
}

RunConfig make_run_config(const ExperimentConfig& config, const Scenario& scenario,
                          std::uint64_t seed) {
  RunConfig rc;
  rc.sigma = config.sigma.value_or(scenario.model.sigma_default);
  rc.theta = config.theta;
  rc.schedule = config.schedule;
  rc.approach = config.approach;
  rc.horizon = config.horizon;
  rc.seed = seed;
  return rc;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Scenario scenario = resolve_scenario(config.scenario);

  std::filesystem::create_directories(config.out_dir);
  const std::string stem = config.stem();

  ExperimentOutput out;
  out.results.resize(config.seeds.size());
  out.csv_paths.resize(config.seeds.size());

  const int jobs = std::min<int>(config.jobs, static_cast<int>(config.seeds.size()));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1)
#endif
  for (long long i = 0; i < static_cast<long long>(config.seeds.size()); ++i) {
    const std::uint64_t seed = config.seeds[static_cast<std::size_t>(i)];
    const RunConfig rc = make_run_config(config, scenario, seed);
    RunResult result = run(scenario.model, scenario.objective, rc);
    const std::string path =
        config.out_dir + "/" + stem + "_seed" + std::to_string(seed) + ".csv";
    write_checkpoint_csv(path, scenario.model, scenario.objective, result.checkpoints);
    out.results[static_cast<std::size_t>(i)] = std::move(result);
    out.csv_paths[static_cast<std::size_t>(i)] = path;
  }

  json summary;
  summary["scenario"] = scenario.model.name;
  summary["approach"] = to_string(config.approach);
  summary["config"] = {
      {"theta", config.theta},
      {"sigma", config.sigma.value_or(scenario.model.sigma_default)},
      {"horizon", config.horizon},
      {"mode", config.schedule.mode == Schedule::Mode::constant ? "constant" : "variable"},
      {"V0", config.schedule.V0},
      {"W", config.schedule.fixed_W},
      {"beta1", config.schedule.beta1},
      {"beta2", config.schedule.beta2},
      {"t0", config.schedule.t0},
  };
  json per_seed = json::array();
  KahanSum f_sum;
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    per_seed.push_back(run_to_json(out.results[i], config.seeds[i], scenario.objective));
    f_sum.add(out.results[i].f_avg_final);
  }
  summary["runs"] = per_seed;
  const double n = static_cast<double>(config.seeds.size());
  const double f_mean = f_sum.value() / n;
  double var = 0.0;
  for (const RunResult& r : out.results) {
    var += (r.f_avg_final - f_mean) * (r.f_avg_final - f_mean);
  }
  var = config.seeds.size() > 1 ? var / (n - 1.0) : 0.0;
  summary["aggregate"] = {{"f_avg_mean", f_mean},
                          {"f_avg_se", std::sqrt(var / n)},
                          {"num_seeds", config.seeds.size()}};

  out.summary_path = config.out_dir + "/" + stem + "_summary.json";
  std::ofstream sf(out.summary_path, std::ios::binary);
  if (!sf) throw std::runtime_error("cannot open " + out.summary_path);
  sf << summary.dump(2) << "\n";
  return out;
}

}  // namespace mwl
