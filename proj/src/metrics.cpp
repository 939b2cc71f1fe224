#include "mwl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mwl {

RunningAverages::RunningAverages(const ScenarioModel& model, const ObjectiveSpec& obj)
    : x_(static_cast<std::size_t>(model.M)),
      gamma_(obj.nonlinear_indices.size()),
      q_(static_cast<std::size_t>(model.L)),
      u_(obj.constraints.size()),
      absz_(obj.nonlinear_indices.size()) {}

void RunningAverages::update(const SlotRecord& record) {
  if (count_ > 0 && record.t <= last_slot_) {
    throw std::invalid_argument("metrics: slot " + std::to_string(record.t) +
                                " not after slot " + std::to_string(last_slot_));
  }
  last_slot_ = record.t;
  ++count_;
  for (std::size_t m = 0; m < x_.size(); ++m) x_[m].add(record.outcome.x[m]);
  for (std::size_t j = 0; j < gamma_.size(); ++j) gamma_[j].add(record.decision.gamma[j]);
  for (std::size_t l = 0; l < q_.size(); ++l) q_[l].add(record.theta_before.Q[l]);
  for (std::size_t n = 0; n < u_.size(); ++n) u_[n].add(record.theta_before.U[n]);
  for (std::size_t j = 0; j < absz_.size(); ++j) absz_[j].add(std::abs(record.theta_before.Z[j]));
}

Vec RunningAverages::scaled(const std::vector<KahanSum>& sums) const {
  Vec out(sums.size(), 0.0);
  if (count_ == 0) return out;
  for (std::size_t i = 0; i < sums.size(); ++i) out[i] = sums[i].value() / static_cast<double>(count_);
  return out;
}

Vec RunningAverages::xbar() const { return scaled(x_); }
Vec RunningAverages::gammabar() const { return scaled(gamma_); }
Vec RunningAverages::qbar() const { return scaled(q_); }
Vec RunningAverages::ubar() const { return scaled(u_); }
Vec RunningAverages::abszbar() const { return scaled(absz_); }

double RunningAverages::f_avg(const ObjectiveSpec& obj) const { return obj.f_value(xbar()); }

DiagnosticBounds compute_bounds(const ScenarioModel& model, const ObjectiveSpec& obj,
                                const ControlParams& params) {
  DiagnosticBounds out;
  // constraint rows: extremes of the affine h_n over the penalty box
  for (const ConstraintRow& cr : obj.constraints) {
    double hmin = cr.h.offset;
    double hmax = cr.h.offset;
    for (int m = 0; m < model.M; ++m) {
      const double c = cr.h.coeff[static_cast<std::size_t>(m)];
      const double lo = model.bounds.x_min[static_cast<std::size_t>(m)];
      const double hi = model.bounds.x_max[static_cast<std::size_t>(m)];
      hmin += c * (c >= 0.0 ? lo : hi);
      hmax += c * (c >= 0.0 ? hi : lo);
    }
    const double worst = std::max(std::abs(cr.b - hmin), std::abs(cr.b - hmax));
    out.B_est += worst * worst;
  }
  // equality queues: max |gamma - x| over the extended and plain boxes
  for (int idx : obj.nonlinear_indices) {
    const double span = model.bounds.x_max[static_cast<std::size_t>(idx)] -
                        model.bounds.x_min[static_cast<std::size_t>(idx)] + params.sigma;
    out.B_est += span * span;
  }
  // actual queues: max |mu - A|
  for (int l = 0; l < model.L; ++l) {
    const double worst = std::max(model.bounds.mu_max[static_cast<std::size_t>(l)],
                                  model.bounds.A_max[static_cast<std::size_t>(l)]);
    out.B_est += worst * worst;
  }

  for (int m = 0; m < model.M; ++m) {
    out.l_diff += std::abs(obj.linear.coeff[static_cast<std::size_t>(m)]) *
                  (model.bounds.x_max[static_cast<std::size_t>(m)] -
                   model.bounds.x_min[static_cast<std::size_t>(m)]);
  }
  for (std::size_t j = 0; j < obj.nonlinear.size(); ++j) {
    const int m = obj.nonlinear_indices[j];
    const double lo = model.bounds.x_min[static_cast<std::size_t>(m)] - params.sigma;
    const double hi = model.bounds.x_max[static_cast<std::size_t>(m)] + params.sigma;
    const ConvexTerm& term = obj.nonlinear[j];
    const double fmax = std::max(term.eval(lo), term.eval(hi));
    const double arg = golden_section_min([&](double g) { return term.eval(g); }, lo, hi, 1e-12);
    out.f_diff += fmax - term.eval(arg);
  }
  return out;
}

double squared_drift_terms(const SlotRecord& record, const ObjectiveSpec& obj) {
  double total = 0.0;
  for (const ConstraintRow& cr : obj.constraints) {
    const double d = cr.b - cr.h(record.outcome.x);
    total += d * d;
  }
  for (std::size_t j = 0; j < obj.nonlinear_indices.size(); ++j) {
    const double d = record.decision.gamma[j] -
                     record.outcome.x[static_cast<std::size_t>(obj.nonlinear_indices[j])];
    total += d * d;
  }
  for (std::size_t l = 0; l < record.outcome.mu.size(); ++l) {
    const double d = record.outcome.mu[l] - record.outcome.A[l];
    total += d * d;
  }
  return total;
}

ConstraintCheck check_constraints(const RunningAverages& avg, const ObjectiveSpec& obj,
                                  const QueueState& final_state, const QueueState& initial_state,
                                  double tolerance) {
  if (avg.slots() <= 0) throw std::invalid_argument("check_constraints: no slots accumulated");
  const double t = static_cast<double>(avg.slots());
  const Vec xbar = avg.xbar();
  const Vec gbar = avg.gammabar();

  ConstraintCheck out;
  out.residual.resize(obj.constraints.size());
  out.u_over_t.resize(obj.constraints.size());
  out.ok.resize(obj.constraints.size());
  for (std::size_t n = 0; n < obj.constraints.size(); ++n) {
    out.residual[n] = obj.constraints[n].h(xbar) - obj.constraints[n].b;
    out.u_over_t[n] = final_state.U[n] / t;
    out.ok[n] = out.residual[n] <= out.u_over_t[n] + tolerance;
  }
  out.eq_gap.resize(gbar.size());
  out.telescope_dev.resize(gbar.size());
  for (std::size_t j = 0; j < gbar.size(); ++j) {
    const int m = obj.nonlinear_indices[j];
    out.eq_gap[j] = std::abs(xbar[static_cast<std::size_t>(m)] - gbar[j]);
    const double z_ratio = std::abs(final_state.Z[j] - initial_state.Z[j]) / t;
    out.telescope_dev[j] = std::abs(out.eq_gap[j] - z_ratio);
  }
  return out;
}

std::vector<SlotIndex> checkpoint_times(SlotIndex horizon) {
  std::vector<SlotIndex> times;
  for (SlotIndex t = 1; t < horizon; t *= 2) times.push_back(t);
  for (int j = 7; j >= 1; --j) {
    const SlotIndex t = horizon - j * (horizon / 64);
    if (t >= 1) times.push_back(t);
  }
  if (horizon >= 1) times.push_back(horizon);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_header(const ScenarioModel& model, const ObjectiveSpec& obj) {
  std::string h = "t,f_avg";
  for (int m = 0; m < model.M; ++m) h += ",xbar_" + std::to_string(m);
  for (int n = 0; n < obj.num_constraints(); ++n) h += ",resid_" + std::to_string(n);
  for (std::size_t j = 0; j < obj.nonlinear_indices.size(); ++j) {
    h += ",absz_over_t_" + std::to_string(obj.nonlinear_indices[j]);
  }
  for (int l = 0; l < model.L; ++l) h += ",qbar_" + std::to_string(l);
  for (int n = 0; n < obj.num_constraints(); ++n) h += ",ubar_" + std::to_string(n);
  h += ",V,W,exploration_count";
  return h;
}

std::string csv_row(const CheckpointRow& row) {
  std::string s = std::to_string(row.t) + "," + fmt(row.f_avg);
  for (double v : row.xbar) s += "," + fmt(v);
  for (double v : row.resid) s += "," + fmt(v);
  for (double v : row.absz_over_t) s += "," + fmt(v);
  for (double v : row.qbar) s += "," + fmt(v);
  for (double v : row.ubar) s += "," + fmt(v);
  s += "," + fmt(row.v) + "," + std::to_string(row.w) + "," + std::to_string(row.exploration_count);
  return s;
}

void write_checkpoint_csv(const std::string& path, const ScenarioModel& model,
                          const ObjectiveSpec& obj, const std::vector<CheckpointRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("metrics: cannot open " + path + " for writing");
  out << csv_header(model, obj) << "\n";
  for (const CheckpointRow& row : rows) out << csv_row(row) << "\n";
  if (!out.good()) throw std::runtime_error("metrics: failed writing " + path);
}

}  // namespace mwl
