#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mwl/objective.hpp"
#include "mwl/record.hpp"
#include "mwl/scenario.hpp"
#include "mwl/weights.hpp"

namespace mwl {

// Compensated (Kahan) accumulator so 1e7-slot sums keep full precision.
class KahanSum {
 public:
  void add(double v) {
    const double y = v - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Running time averages over the slots seen so far.
class RunningAverages {
 public:
  RunningAverages() = default;
  RunningAverages(const ScenarioModel& model, const ObjectiveSpec& obj);

  void update(const SlotRecord& record);  // throws on out-of-order slots

  SlotIndex slots() const { return count_; }
  Vec xbar() const;
  Vec gammabar() const;
  Vec qbar() const;
  Vec ubar() const;
  Vec abszbar() const;
  double f_avg(const ObjectiveSpec& obj) const;

 private:
  Vec scaled(const std::vector<KahanSum>& sums) const;

  std::vector<KahanSum> x_, gamma_, q_, u_, absz_;
  SlotIndex count_ = 0;
  SlotIndex last_slot_ = std::numeric_limits<SlotIndex>::min();
};

// Scenario-derived drift constants (diagnostics, not used by decisions).
struct DiagnosticBounds {
  double B_est = 0.0;
  double l_diff = 0.0;
  double f_diff = 0.0;
};

DiagnosticBounds compute_bounds(const ScenarioModel& model, const ObjectiveSpec& obj,
                                const ControlParams& params);

// Squared one-slot drift terms of a single record; must stay below B_est.
double squared_drift_terms(const SlotRecord& record, const ObjectiveSpec& obj);

struct ConstraintCheck {
  Vec residual;           // h_n(xbar) - b_n
  Vec u_over_t;           // U_n(t)/t
  std::vector<bool> ok;   // residual <= U_n(t)/t + tolerance
  Vec eq_gap;             // |xbar_m - gammabar_m|
  Vec telescope_dev;      // | |xbar-gammabar| - |Z(t)-Z(0)|/t |
};

ConstraintCheck check_constraints(const RunningAverages& avg, const ObjectiveSpec& obj,
                                  const QueueState& final_state, const QueueState& initial_state,
                                  double tolerance);

// One CSV row; columns fixed by docs/metrics-schema.md.
struct CheckpointRow {
  SlotIndex t = 0;
  double f_avg = 0.0;
  Vec xbar;
  Vec resid;
  Vec absz_over_t;
  Vec qbar;
  Vec ubar;
  double v = 0.0;
  int w = 0;
  long long exploration_count = 0;
};

// Geometric checkpoints (powers of two) plus a short tail window and the
// final slot.
std::vector<SlotIndex> checkpoint_times(SlotIndex horizon);

std::string csv_header(const ScenarioModel& model, const ObjectiveSpec& obj);
std::string csv_row(const CheckpointRow& row);
void write_checkpoint_csv(const std::string& path, const ScenarioModel& model,
                          const ObjectiveSpec& obj, const std::vector<CheckpointRow>& rows);

}  // namespace mwl
