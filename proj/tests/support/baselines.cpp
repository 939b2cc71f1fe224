#include "support/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwl::testsupport {

namespace {

double affine(const AffineFn& fn, const Vec& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < fn.coeff.size(); ++i) acc += fn.coeff[i] * x[i];
  return acc + fn.offset;
}

// dense scan for the minimum of v*term(g) - z*g over [lo, hi]
double grid_refine_argmin(const ConvexTerm& term, double v, double z, double lo, double hi) {
  auto objective = [&](double g) { return v * term.eval(g) - z * g; };
  double a = lo, b = hi;
  for (int round = 0; round < 14; ++round) {
    const int steps = 64;
    double best_g = a, best_val = objective(a);
    for (int s = 1; s <= steps; ++s) {
      const double g = a + (b - a) * s / steps;
      const double val = objective(g);
      if (val < best_val) {
        best_val = val;
        best_g = g;
      }
    }
    const double width = (b - a) / steps;
    a = std::max(lo, best_g - width);
    b = std::min(hi, best_g + width);
  }
  return 0.5 * (a + b);
}

}  // namespace

// ---------------------------------------------------------------------------
// ExactMaxWeight

ExactMaxWeight::ExactMaxWeight(const ScenarioModel& model, const ObjectiveSpec& obj, double v,
                               double sigma, double theta, int w0, std::uint64_t seed)
    : model_(model),
      obj_(obj),
      v_(v),
      sigma_(sigma),
      theta_param_(theta),
      w0_(w0),
      rng_(seed),
      theta_(QueueState::zeros(model.L, obj.num_constraints(), obj.num_nonlinear(),
                               -static_cast<SlotIndex>(w0) * model.K)) {}

double ExactMaxWeight::slot_weight(int k, int w, int i) const {
  const SlotEffect& e = model_.effect(k, w, i);
  double y = v_ * affine(obj_.linear, e.x);
  for (std::size_t n = 0; n < obj_.constraints.size(); ++n) {
    y += theta_.U[n] * affine(obj_.constraints[n].h, e.x);
  }
  for (std::size_t j = 0; j < obj_.nonlinear_indices.size(); ++j) {
    y += theta_.Z[j] * e.x[static_cast<std::size_t>(obj_.nonlinear_indices[j])];
  }
  for (int l = 0; l < model_.L; ++l) {
    y -= theta_.Q[static_cast<std::size_t>(l)] *
         (e.mu[static_cast<std::size_t>(l)] - e.A[static_cast<std::size_t>(l)]);
  }
  return y;
}

double ExactMaxWeight::expected_min_weight(int k) const {
  const auto& dist = model_.distributions[static_cast<std::size_t>(k)];
  double total = 0.0;
  for (int w = 0; w < dist.size(); ++w) {
    double best = slot_weight(k, w, 0);
    for (int i = 1; i < model_.num_actions(); ++i) {
      best = std::min(best, slot_weight(k, w, i));
    }
    total += dist.probabilities[static_cast<std::size_t>(w)] * best;
  }
  return total;
}

Vec ExactMaxWeight::aux_argmin() const {
  Vec gamma(obj_.nonlinear_indices.size(), 0.0);
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    const int m = obj_.nonlinear_indices[j];
    const double lo = model_.bounds.x_min[static_cast<std::size_t>(m)] - sigma_;
    const double hi = model_.bounds.x_max[static_cast<std::size_t>(m)] + sigma_;
    gamma[j] = grid_refine_argmin(obj_.nonlinear[j], v_, theta_.Z[j], lo, hi);
  }
  return gamma;
}

int ExactMaxWeight::draw_outcome(int k) {
  const auto& dist = model_.distributions[static_cast<std::size_t>(k)];
  const double u = rng_.uniform01();
  double acc = 0.0;
  for (int w = 0; w < dist.size(); ++w) {
    acc += dist.probabilities[static_cast<std::size_t>(w)];
    if (u < acc) return w;
  }
  return dist.size() - 1;
}

void ExactMaxWeight::advance(int k, int w, int i, const Vec& gamma) {
  const SlotEffect& e = model_.effect(k, w, i);
  QueueState next = theta_;
  next.t = theta_.t + 1;
  for (int l = 0; l < model_.L; ++l) {
    next.Q[static_cast<std::size_t>(l)] =
        std::max(theta_.Q[static_cast<std::size_t>(l)] - e.mu[static_cast<std::size_t>(l)], 0.0) +
        e.A[static_cast<std::size_t>(l)];
  }
  for (std::size_t n = 0; n < obj_.constraints.size(); ++n) {
    next.U[n] = std::max(theta_.U[n] + affine(obj_.constraints[n].h, e.x) - obj_.constraints[n].b, 0.0);
  }
  for (std::size_t j = 0; j < obj_.nonlinear_indices.size(); ++j) {
    next.Z[j] = theta_.Z[j] - gamma[j] + e.x[static_cast<std::size_t>(obj_.nonlinear_indices[j])];
  }
  theta_ = next;
}

void ExactMaxWeight::initialize() {
  const SlotIndex start = -static_cast<SlotIndex>(w0_) * model_.K;
  theta_ = QueueState::zeros(model_.L, obj_.num_constraints(), obj_.num_nonlinear(), start);
  for (SlotIndex t = start; t < 0; ++t) {
    const int k = static_cast<int>((t - start) % model_.K);
    const int w = draw_outcome(k);
    int best = 0;
    for (int i = 1; i < model_.num_actions(); ++i) {
      if (slot_weight(k, w, i) < slot_weight(k, w, best)) best = i;
    }
    advance(k, w, best, aux_argmin());
  }
}

BaselineStep ExactMaxWeight::step() {
  BaselineStep out;
  out.exploration = rng_.uniform01() < theta_param_;
  if (out.exploration) {
    out.k = rng_.uniform_index(model_.K);
  } else {
    out.k = 0;
    double best = expected_min_weight(0);
    for (int k = 1; k < model_.K; ++k) {
      const double e = expected_min_weight(k);
      if (e < best) {
        best = e;
        out.k = k;
      }
    }
  }
  out.omega_index = draw_outcome(out.k);
  out.action = 0;
  double best = slot_weight(out.k, out.omega_index, 0);
  for (int i = 1; i < model_.num_actions(); ++i) {
    const double y = slot_weight(out.k, out.omega_index, i);
    if (y < best) {
      best = y;
      out.action = i;
    }
  }
  out.gamma = aux_argmin();
  advance(out.k, out.omega_index, out.action, out.gamma);
  out.after = theta_;
  return out;
}

// ---------------------------------------------------------------------------
// FixedPolicyPlayer

FixedPolicyPlayer::FixedPolicyPlayer(const ScenarioModel& model, const ObjectiveSpec& obj,
                                     const StationaryPolicy& policy, std::uint64_t seed)
    : model_(model),
      obj_(obj),
      policy_(policy),
      rng_(seed),
      theta_(QueueState::zeros(model.L, obj.num_constraints(), obj.num_nonlinear(), 0)) {
  const PolicyAverages avg = policy_time_averages(model, policy);
  gamma_star_.resize(obj.nonlinear_indices.size());
  for (std::size_t j = 0; j < gamma_star_.size(); ++j) {
    gamma_star_[j] = avg.xbar[static_cast<std::size_t>(obj.nonlinear_indices[j])];
  }
}

int FixedPolicyPlayer::draw_from(const Vec& probs) {
  const double u = rng_.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

BaselineStep FixedPolicyPlayer::step() {
  BaselineStep out;
  out.k = draw_from(policy_.stage1);
  out.omega_index = draw_from(model_.distributions[static_cast<std::size_t>(out.k)].probabilities);
  out.action = draw_from(
      policy_.stage2[static_cast<std::size_t>(out.k)][static_cast<std::size_t>(out.omega_index)]);
  out.gamma = gamma_star_;

  const SlotEffect& e = model_.effect(out.k, out.omega_index, out.action);
  QueueState next = theta_;
  next.t = theta_.t + 1;
  for (int l = 0; l < model_.L; ++l) {
    next.Q[static_cast<std::size_t>(l)] =
        std::max(theta_.Q[static_cast<std::size_t>(l)] - e.mu[static_cast<std::size_t>(l)], 0.0) +
        e.A[static_cast<std::size_t>(l)];
  }
  for (std::size_t n = 0; n < obj_.constraints.size(); ++n) {
    next.U[n] = std::max(theta_.U[n] + affine(obj_.constraints[n].h, e.x) - obj_.constraints[n].b, 0.0);
  }
  for (std::size_t j = 0; j < obj_.nonlinear_indices.size(); ++j) {
    next.Z[j] = theta_.Z[j] - out.gamma[j] + e.x[static_cast<std::size_t>(obj_.nonlinear_indices[j])];
  }
  theta_ = next;
  out.after = theta_;
  return out;
}

// ---------------------------------------------------------------------------
// NoStage1Dpp

NoStage1Dpp::NoStage1Dpp(const ScenarioModel& model, const ObjectiveSpec& obj, double v,
                         double sigma, double theta, int w0, std::uint64_t seed)
    : model_(model),
      obj_(obj),
      v_(v),
      sigma_(sigma),
      theta_param_(theta),
      w0_(w0),
      rng_(seed),
      theta_(QueueState::zeros(model.L, obj.num_constraints(), obj.num_nonlinear(), -w0)) {
  if (model.K != 1) throw std::invalid_argument("NoStage1Dpp: needs a K = 1 scenario");
}

double NoStage1Dpp::slot_weight(int w, int i) const {
  const SlotEffect& e = model_.effect(0, w, i);
  double y = v_ * affine(obj_.linear, e.x);
  for (std::size_t n = 0; n < obj_.constraints.size(); ++n) {
    y += theta_.U[n] * affine(obj_.constraints[n].h, e.x);
  }
  for (std::size_t j = 0; j < obj_.nonlinear_indices.size(); ++j) {
    y += theta_.Z[j] * e.x[static_cast<std::size_t>(obj_.nonlinear_indices[j])];
  }
  for (int l = 0; l < model_.L; ++l) {
    y -= theta_.Q[static_cast<std::size_t>(l)] *
         (e.mu[static_cast<std::size_t>(l)] - e.A[static_cast<std::size_t>(l)]);
  }
  return y;
}

void NoStage1Dpp::advance(int w, int i, const Vec& gamma) {
  const SlotEffect& e = model_.effect(0, w, i);
  QueueState next = theta_;
  next.t = theta_.t + 1;
  for (int l = 0; l < model_.L; ++l) {
    next.Q[static_cast<std::size_t>(l)] =
        std::max(theta_.Q[static_cast<std::size_t>(l)] - e.mu[static_cast<std::size_t>(l)], 0.0) +
        e.A[static_cast<std::size_t>(l)];
  }
  for (std::size_t n = 0; n < obj_.constraints.size(); ++n) {
    next.U[n] = std::max(theta_.U[n] + affine(obj_.constraints[n].h, e.x) - obj_.constraints[n].b, 0.0);
  }
  for (std::size_t j = 0; j < obj_.nonlinear_indices.size(); ++j) {
    next.Z[j] = theta_.Z[j] - gamma[j] + e.x[static_cast<std::size_t>(obj_.nonlinear_indices[j])];
  }
  theta_ = next;
}

void NoStage1Dpp::initialize() {
  theta_ = QueueState::zeros(model_.L, obj_.num_constraints(), obj_.num_nonlinear(), -w0_);
  for (SlotIndex t = -w0_; t < 0; ++t) {
    const double u = rng_.uniform01();
    const auto& dist = model_.distributions[0];
    int w = dist.size() - 1;
    double acc = 0.0;
    for (int cand = 0; cand < dist.size(); ++cand) {
      acc += dist.probabilities[static_cast<std::size_t>(cand)];
      if (u < acc) {
        w = cand;
        break;
      }
    }
    int best = 0;
    for (int i = 1; i < model_.num_actions(); ++i) {
      if (slot_weight(w, i) < slot_weight(w, best)) best = i;
    }
    Vec gamma(obj_.nonlinear_indices.size(), 0.0);
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      const int m = obj_.nonlinear_indices[j];
      gamma[j] = grid_refine_argmin(obj_.nonlinear[j], v_, theta_.Z[j],
                                    model_.bounds.x_min[static_cast<std::size_t>(m)] - sigma_,
                                    model_.bounds.x_max[static_cast<std::size_t>(m)] + sigma_);
    }
    advance(w, best, gamma);
  }
}

BaselineStep NoStage1Dpp::step() {
  BaselineStep out;
  out.exploration = rng_.uniform01() < theta_param_;
  out.k = 0;  // K = 1: the type draw is a no-op either way

  const double u = rng_.uniform01();
  const auto& dist = model_.distributions[0];
  out.omega_index = dist.size() - 1;
  double acc = 0.0;
  for (int cand = 0; cand < dist.size(); ++cand) {
    acc += dist.probabilities[static_cast<std::size_t>(cand)];
    if (u < acc) {
      out.omega_index = cand;
      break;
    }
  }

  out.action = 0;
  for (int i = 1; i < model_.num_actions(); ++i) {
    if (slot_weight(out.omega_index, i) < slot_weight(out.omega_index, out.action)) out.action = i;
  }
  out.gamma.resize(obj_.nonlinear_indices.size());
  for (std::size_t j = 0; j < out.gamma.size(); ++j) {
    const int m = obj_.nonlinear_indices[j];
    out.gamma[j] = grid_refine_argmin(obj_.nonlinear[j], v_, theta_.Z[j],
                                      model_.bounds.x_min[static_cast<std::size_t>(m)] - sigma_,
                                      model_.bounds.x_max[static_cast<std::size_t>(m)] + sigma_);
  }
  advance(out.omega_index, out.action, out.gamma);
  out.after = theta_;
  return out;
}

}  // namespace mwl::testsupport
