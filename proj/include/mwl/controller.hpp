#pragma once

#include <cstdint>
#include <vector>

#include "mwl/estimator.hpp"
#include "mwl/metrics.hpp"
#include "mwl/record.hpp"
#include "mwl/rng.hpp"
#include "mwl/scenario.hpp"
#include "mwl/weights.hpp"

namespace mwl {

// V(t) / What(t) schedules. Constant mode keeps both fixed; variable mode
// grows V(t) = (t - t0 + 1)^beta2 V0 and What(t) = floor((t+1)^beta1) with
// initialization window W0 = 1.
struct Schedule {
  enum class Mode { constant, variable };

  Mode mode = Mode::constant;
  double V0 = 1.0;
  int fixed_W = 1;
  double beta1 = 0.3;
  double beta2 = 0.6;
  SlotIndex t0 = 0;

  void validate() const;  // throws std::invalid_argument
  double V_at(SlotIndex t) const;
  int W_hat_at(SlotIndex t) const;
  int W0() const { return mode == Mode::constant ? fixed_W : 1; }
  std::size_t buffer_capacity(SlotIndex horizon) const;
};

struct RunConfig {
  double sigma = 1.0;
  double theta = 0.0;
  Schedule schedule;
  Approach approach = Approach::oracle;
  SlotIndex horizon = 0;
  std::uint64_t seed = 1;

  ControlParams params() const {
    return ControlParams{schedule.V0, sigma, theta, schedule.W0()};
  }
  void validate() const;
};

// Executes the per-slot learning loop: exploration draw, stage-1 selection,
// stage-2 argmin, auxiliary variables, sample storage, queue updates.
class Controller {
 public:
  Controller(const ScenarioModel& model, const ObjectiveSpec& obj, const RunConfig& config);

  // Round-robin warmup over slots -W0*K .. -1 starting from a zero state;
  // every warmup slot is stored as an exploration sample.
  void initialize();

  // One slot t >= 0. initialize() must have run.
  void step(SlotRecord& record);

  const QueueState& state() const { return theta_; }
  const SampleBuffers& buffers() const { return buffers_; }
  SlotIndex now() const { return theta_.t; }
  long long exploration_count() const { return exploration_total_; }
  const std::vector<long long>& exploration_count_per_type() const { return exploration_per_type_; }

 private:
  int pick_stage1(double v, int window, Vec& estimates, bool exploration);
  void apply_slot(int k, int omega_index, int action, const Vec& gamma, bool store_sample,
                  double v, SlotRecord* record);

  const ScenarioModel& model_;
  const ObjectiveSpec& obj_;
  RunConfig config_;
  Rng rng_;
  QueueState theta_;
  SampleBuffers buffers_;
  bool initialized_ = false;
  long long exploration_total_ = 0;
  std::vector<long long> exploration_per_type_;
};

// Per-run audit counters backing the sampling-discipline checks.
struct RunAudit {
  bool buffer_entries_on_exploration_slots = true;
  bool recorded_count_matches = true;
  bool greedy_always_argmin = true;
  Vec tk_mean;  // per option; -1 when the window never filled
  double max_abs_z_step = 0.0;
};

struct RunResult {
  RunningAverages averages;
  std::vector<CheckpointRow> checkpoints;
  QueueState initial_state;  // Theta(0), after initialization
  QueueState final_state;
  long long exploration_count = 0;
  std::vector<long long> exploration_count_per_type;
  RunAudit audit;
  double telescope_max_dev = 0.0;  // max over checkpoints
  double lemma1_max_excess = 0.0;  // max over checkpoints of residual - U/t
  double f_avg_final = 0.0;
};

RunResult run(const ScenarioModel& model, const ObjectiveSpec& obj, const RunConfig& config);

}  // namespace mwl
