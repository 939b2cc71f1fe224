#include "mwl/controller.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "mwl/oracle.hpp"

namespace mwl {

Approach approach_from_string(const std::string& s) {
  if (s == "approach1") return Approach::approach1;
  if (s == "approach2") return Approach::approach2;
  if (s == "oracle") return Approach::oracle;
  if (s == "uniform-random") return Approach::uniform_random;
  throw std::invalid_argument("unknown approach '" + s + "'");
}

std::string to_string(Approach a) {
  switch (a) {
    case Approach::approach1: return "approach1";
    case Approach::approach2: return "approach2";
    case Approach::oracle: return "oracle";
    case Approach::uniform_random: return "uniform-random";
  }
  return "?";
}

void Schedule::validate() const {
  if (V0 <= 0.0) throw std::invalid_argument("schedule: V0 must be positive");
  if (mode == Mode::constant) {
    if (fixed_W < 1) throw std::invalid_argument("schedule: fixed window must be at least 1");
  } else {
    if (!(0.0 < beta1 && beta1 < beta2 && beta2 < 1.0)) {
      throw std::invalid_argument("schedule: variable mode requires 0 < beta1 < beta2 < 1");
    }
    if (t0 < 0) throw std::invalid_argument("schedule: t0 must be nonnegative");
  }
}

double Schedule::V_at(SlotIndex t) const {
  if (mode == Mode::constant || t < t0) return V0;
  return std::pow(static_cast<double>(t - t0 + 1), beta2) * V0;
}

int Schedule::W_hat_at(SlotIndex t) const {
  if (mode == Mode::constant) return fixed_W;
  if (t < 0) return 1;
  const double w = std::floor(std::pow(static_cast<double>(t + 1), beta1));
  return std::max(1, static_cast<int>(w));
}

std::size_t Schedule::buffer_capacity(SlotIndex horizon) const {
  if (mode == Mode::constant) return static_cast<std::size_t>(fixed_W);
  const double cap = std::ceil(std::pow(static_cast<double>(horizon + 1), beta1));
  return std::max<std::size_t>(1, static_cast<std::size_t>(cap));
}

void RunConfig::validate() const {
  schedule.validate();
  params().validate();
  if (horizon < 0) throw std::invalid_argument("config: horizon must be nonnegative");
}

Controller::Controller(const ScenarioModel& model, const ObjectiveSpec& obj,
                       const RunConfig& config)
    : model_(model),
      obj_(obj),
      config_(config),
      rng_(config.seed),
      theta_(QueueState::zeros(model.L, obj.num_constraints(), obj.num_nonlinear(), 0)),
      buffers_(model.K, config.schedule.buffer_capacity(std::max<SlotIndex>(config.horizon, 1))),
      exploration_per_type_(static_cast<std::size_t>(model.K), 0) {
  config_.validate();
  obj_.validate(model.M);
}

void Controller::initialize() {
  const int w0 = config_.schedule.W0();
  const SlotIndex start = -static_cast<SlotIndex>(w0) * model_.K;
  theta_ = QueueState::zeros(model_.L, obj_.num_constraints(), obj_.num_nonlinear(), start);
  for (SlotIndex t = start; t < 0; ++t) {
    const int k = static_cast<int>((t - start) % model_.K);
    const double v = config_.schedule.V_at(t);
    const int omega_index = sample_outcome_index(model_, k, rng_);
    const Stage2Result s2 = best_stage2(model_, obj_, k, omega_index, theta_, v);
    const Vec gamma = best_aux(obj_, model_.bounds, theta_.Z, v, config_.sigma);

    SampleEntry entry;
    entry.omega_index = omega_index;
    entry.omega = model_.distributions[static_cast<std::size_t>(k)].support[static_cast<std::size_t>(omega_index)];
    entry.cost = s2.value;
    entry.v_at_sample = v;
    entry.theta = theta_;
    entry.slot = t;
    buffers_.record(k, std::move(entry));

    apply_slot(k, omega_index, s2.action, gamma, false, v, nullptr);
  }
  initialized_ = true;
}

int Controller::pick_stage1(double v, int window, Vec& estimates, bool exploration) {
  estimates.clear();
  if (exploration) return rng_.uniform_index(model_.K);
  if (config_.approach == Approach::uniform_random) return rng_.uniform_index(model_.K);

  estimates.resize(static_cast<std::size_t>(model_.K));
  for (int k = 0; k < model_.K; ++k) {
    double e = 0.0;
    switch (config_.approach) {
      case Approach::approach1:
        e = estimate_approach1(model_, obj_, buffers_, k, theta_, v, window);
        break;
      case Approach::approach2:
        e = estimate_approach2(buffers_, k, window);
        break;
      case Approach::oracle:
        e = exact_e(model_, obj_, k, theta_, v);
        break;
      case Approach::uniform_random:
        break;
    }
    estimates[static_cast<std::size_t>(k)] = e;
  }
  int best = 0;
  for (int k = 1; k < model_.K; ++k) {
    if (estimates[static_cast<std::size_t>(k)] < estimates[static_cast<std::size_t>(best)]) best = k;
  }
  return best;
}

void Controller::apply_slot(int k, int omega_index, int action, const Vec& gamma,
                            bool store_sample, double v, SlotRecord* record) {
  (void)store_sample;
  const SlotEffect& e = model_.effect(k, omega_index, action);
  QueueState next = theta_;
  next.t = theta_.t + 1;
  for (std::size_t l = 0; l < next.Q.size(); ++l) {
    next.Q[l] = advance_actual(theta_.Q[l], e.mu[l], e.A[l]);
  }
  for (std::size_t n = 0; n < next.U.size(); ++n) {
    next.U[n] = advance_inequality(theta_.U[n], obj_.constraints[n].h(e.x), obj_.constraints[n].b);
  }
  for (std::size_t j = 0; j < next.Z.size(); ++j) {
    const int m = obj_.nonlinear_indices[j];
    const double lo = model_.bounds.x_min[static_cast<std::size_t>(m)] - config_.sigma;
    const double hi = model_.bounds.x_max[static_cast<std::size_t>(m)] + config_.sigma;
    next.Z[j] = advance_equality(theta_.Z[j], gamma[j], e.x[static_cast<std::size_t>(m)], lo, hi);
    // single-slot change bound from the gamma box and penalty bounds; a
    // violation means the scenario tables are inconsistent with the bounds
    assert(std::abs(next.Z[j] - theta_.Z[j]) <=
           model_.bounds.x_max[static_cast<std::size_t>(m)] -
               model_.bounds.x_min[static_cast<std::size_t>(m)] + 2.0 * config_.sigma + 1e-9);
  }
  if (record != nullptr) {
    record->theta_before = theta_;
    record->theta_after = next;
    record->outcome.omega_index = omega_index;
    record->outcome.omega =
        model_.distributions[static_cast<std::size_t>(k)].support[static_cast<std::size_t>(omega_index)];
    record->outcome.x = e.x;
    record->outcome.A = e.A;
    record->outcome.mu = e.mu;
  }
  theta_ = std::move(next);
}

void Controller::step(SlotRecord& record) {
  if (!initialized_) throw std::logic_error("controller: step before initialize");
  const SlotIndex t = theta_.t;
  const double v = config_.schedule.V_at(t);
  const int window = buffers_.window(config_.schedule.W_hat_at(t));

  const bool exploration = rng_.uniform01() < config_.theta;
  record.t = t;
  record.v = v;
  record.w = window;
  record.decision.exploration = exploration;

  const int k = pick_stage1(v, window, record.decision.estimates, exploration);
  record.decision.k = k;
  if (exploration) {
    ++exploration_total_;
    ++exploration_per_type_[static_cast<std::size_t>(k)];
  }

  const int omega_index = sample_outcome_index(model_, k, rng_);
  const Stage2Result s2 = best_stage2(model_, obj_, k, omega_index, theta_, v);
  const Vec gamma = best_aux(obj_, model_.bounds, theta_.Z, v, config_.sigma);
  record.decision.action = s2.action;
  record.decision.gamma = gamma;
  record.outcome.stage2_value = s2.value;

  if (exploration) {
    SampleEntry entry;
    entry.omega_index = omega_index;
    entry.omega = model_.distributions[static_cast<std::size_t>(k)].support[static_cast<std::size_t>(omega_index)];
    entry.cost = s2.value;
    entry.v_at_sample = v;
    entry.theta = theta_;
    entry.slot = t;
    buffers_.record(k, std::move(entry));
  }

  apply_slot(k, omega_index, s2.action, gamma, exploration, v, &record);
}

RunResult run(const ScenarioModel& model, const ObjectiveSpec& obj, const RunConfig& config) {
  config.validate();
  obj.validate(model.M);

  Controller ctl(model, obj, config);
  ctl.initialize();

  RunResult result;
  result.initial_state = ctl.state();
  result.averages = RunningAverages(model, obj);

  const std::vector<SlotIndex> cps = checkpoint_times(config.horizon);
  std::size_t next_cp = 0;

  // audit state
  const SlotIndex init_len = static_cast<SlotIndex>(config.schedule.W0()) * model.K;
  std::vector<std::uint8_t> exploration_flag(static_cast<std::size_t>(config.horizon), 0);
  std::vector<KahanSum> tk_sum(static_cast<std::size_t>(model.K));
  std::vector<long long> tk_count(static_cast<std::size_t>(model.K), 0);
  bool greedy_ok = true;
  double max_z_step = 0.0;

  SlotRecord record;
  for (SlotIndex t = 0; t < config.horizon; ++t) {
    ctl.step(record);

    if (record.decision.exploration) {
      exploration_flag[static_cast<std::size_t>(t)] = 1;
    } else if (!record.decision.estimates.empty()) {
      const Vec& est = record.decision.estimates;
      int best = 0;
      for (int k = 1; k < model.K; ++k) {
        if (est[static_cast<std::size_t>(k)] < est[static_cast<std::size_t>(best)]) best = k;
      }
      if (best != record.decision.k) greedy_ok = false;
    }
    for (int k = 0; k < model.K; ++k) {
      const SampleBuffer& buf = ctl.buffers().buffer(k);
      if (buf.size() >= static_cast<std::size_t>(record.w)) {
        tk_sum[static_cast<std::size_t>(k)].add(
            static_cast<double>(t - buf.recent(static_cast<std::size_t>(record.w - 1)).slot));
        ++tk_count[static_cast<std::size_t>(k)];
      }
    }
    for (std::size_t j = 0; j < record.theta_after.Z.size(); ++j) {
      max_z_step = std::max(max_z_step, std::abs(record.theta_after.Z[j] - record.theta_before.Z[j]));
    }

    result.averages.update(record);

    if (next_cp < cps.size() && t + 1 == cps[next_cp]) {
      ++next_cp;
      const QueueState& now = ctl.state();
      const ConstraintCheck check =
          check_constraints(result.averages, obj, now, result.initial_state, 0.0);
      CheckpointRow row;
      row.t = t + 1;
      row.xbar = result.averages.xbar();
      row.f_avg = obj.f_value(row.xbar);
      row.resid = check.residual;
      row.absz_over_t.resize(now.Z.size());
      for (std::size_t j = 0; j < now.Z.size(); ++j) {
        row.absz_over_t[j] = std::abs(now.Z[j]) / static_cast<double>(t + 1);
      }
      row.qbar = result.averages.qbar();
      row.ubar = result.averages.ubar();
      row.v = record.v;
      row.w = record.w;
      row.exploration_count = ctl.exploration_count();
      result.checkpoints.push_back(std::move(row));

      for (std::size_t j = 0; j < check.telescope_dev.size(); ++j) {
        result.telescope_max_dev = std::max(result.telescope_max_dev, check.telescope_dev[j]);
      }
      for (std::size_t n = 0; n < check.residual.size(); ++n) {
        result.lemma1_max_excess =
            std::max(result.lemma1_max_excess, check.residual[n] - check.u_over_t[n]);
      }
    }
  }

  result.final_state = ctl.state();
  result.exploration_count = ctl.exploration_count();
  result.exploration_count_per_type = ctl.exploration_count_per_type();
  if (config.horizon > 0) {
    result.f_avg_final = result.averages.f_avg(obj);
  }

  // sampling-discipline audit over the retained buffer entries
  RunAudit& audit = result.audit;
  audit.greedy_always_argmin = greedy_ok;
  audit.max_abs_z_step = max_z_step;
  long long total_recorded = 0;
  for (int k = 0; k < model.K; ++k) {
    const SampleBuffer& buf = ctl.buffers().buffer(k);
    total_recorded += buf.total_recorded();
    for (std::size_t i = 0; i < buf.size(); ++i) {
      const SlotIndex slot = buf.recent(i).slot;
      const bool from_init = slot >= -init_len && slot < 0;
      const bool marked = slot >= 0 && slot < config.horizon &&
                          exploration_flag[static_cast<std::size_t>(slot)] != 0;
      if (!from_init && !marked) audit.buffer_entries_on_exploration_slots = false;
    }
  }
  audit.recorded_count_matches = total_recorded == result.exploration_count + init_len;
  audit.tk_mean.assign(static_cast<std::size_t>(model.K), -1.0);
  for (int k = 0; k < model.K; ++k) {
    if (tk_count[static_cast<std::size_t>(k)] > 0) {
      audit.tk_mean[static_cast<std::size_t>(k)] =
          tk_sum[static_cast<std::size_t>(k)].value() /
          static_cast<double>(tk_count[static_cast<std::size_t>(k)]);
    }
  }
  return result;
}

}  // namespace mwl
