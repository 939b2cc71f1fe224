#include "mwl/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mwl {

namespace {

void check_range(const Vec& v, const Vec& lo, const Vec& hi, const char* what, int k, int w, int i) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < lo[j] - 1e-12 || v[j] > hi[j] + 1e-12) {
      throw std::invalid_argument(std::string("scenario: ") + what + " out of bounds at option " +
                                  std::to_string(k) + ", outcome " + std::to_string(w) +
                                  ", action " + std::to_string(i) + ", coordinate " +
                                  std::to_string(j));
    }
  }
}

}  // namespace

void OutcomeDistribution::validate(int option_index) const {
  const std::string tag = "scenario: option " + std::to_string(option_index);
  if (support.empty()) throw std::invalid_argument(tag + " has empty outcome support");
  if (support.size() != probabilities.size()) {
    throw std::invalid_argument(tag + ": support/probability count mismatch");
  }
  const std::size_t d = support.front().size();
  double total = 0.0;
  for (std::size_t w = 0; w < support.size(); ++w) {
    if (support[w].size() != d) {
      throw std::invalid_argument(tag + ": outcome " + std::to_string(w) + " has inconsistent dimension");
    }
    if (probabilities[w] < 0.0) {
      throw std::invalid_argument(tag + ": negative probability at outcome " + std::to_string(w));
    }
    total += probabilities[w];
    for (std::size_t v = w + 1; v < support.size(); ++v) {
      if (support[w] == support[v]) {
        throw std::invalid_argument(tag + ": duplicate outcome vectors " + std::to_string(w) +
                                    " and " + std::to_string(v));
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument(tag + ": probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

int ScenarioModel::find_outcome(int k, const Vec& omega) const {
  const auto& sup = distributions[static_cast<std::size_t>(k)].support;
  for (std::size_t w = 0; w < sup.size(); ++w) {
    if (sup[w] == omega) return static_cast<int>(w);
  }
  return -1;
}

void ScenarioModel::validate() const {
  if (K <= 0 || L <= 0 || M <= 0) throw std::invalid_argument("scenario: K, L, M must be positive");
  if (static_cast<int>(distributions.size()) != K) {
    throw std::invalid_argument("scenario: expected " + std::to_string(K) + " outcome distributions");
  }
  if (actions.empty()) throw std::invalid_argument("scenario: empty stage-2 action set");
  if (static_cast<int>(bounds.x_min.size()) != M || static_cast<int>(bounds.x_max.size()) != M ||
      static_cast<int>(bounds.A_max.size()) != L || static_cast<int>(bounds.mu_max.size()) != L) {
    throw std::invalid_argument("scenario: bounds dimensions do not match M/L");
  }
  for (int m = 0; m < M; ++m) {
    if (bounds.x_min[m] > bounds.x_max[m]) {
      throw std::invalid_argument("scenario: x_min > x_max at coordinate " + std::to_string(m));
    }
  }
  if (static_cast<int>(table.size()) != K) throw std::invalid_argument("scenario: table option count mismatch");

  const Vec zeroL(static_cast<std::size_t>(L), 0.0);
  for (int k = 0; k < K; ++k) {
    distributions[k].validate(k);
    const int nw = distributions[k].size();
    if (static_cast<int>(table[k].size()) != nw) {
      throw std::invalid_argument("scenario: option " + std::to_string(k) + " table outcome count mismatch");
    }
    for (int w = 0; w < nw; ++w) {
      if (static_cast<int>(table[k][w].size()) != num_actions()) {
        throw std::invalid_argument("scenario: option " + std::to_string(k) + ", outcome " +
                                    std::to_string(w) + " table action count mismatch");
      }
      for (int i = 0; i < num_actions(); ++i) {
        const SlotEffect& e = table[k][w][i];
        if (static_cast<int>(e.x.size()) != M || static_cast<int>(e.A.size()) != L ||
            static_cast<int>(e.mu.size()) != L) {
          throw std::invalid_argument("scenario: table entry dimension mismatch at option " +
                                      std::to_string(k));
        }
        check_range(e.x, bounds.x_min, bounds.x_max, "penalty", k, w, i);
        check_range(e.A, zeroL, bounds.A_max, "arrival", k, w, i);
        check_range(e.mu, zeroL, bounds.mu_max, "service", k, w, i);
      }
    }
  }
  if (sigma_default <= 0.0) throw std::invalid_argument("scenario: sigma must be positive");
}

int sample_outcome_index(const ScenarioModel& model, int k, Rng& rng) {
  if (k < 0 || k >= model.K) {
    throw std::invalid_argument("sample_outcome: option index " + std::to_string(k) +
                                " outside [0, " + std::to_string(model.K - 1) + "]");
  }
  const auto& dist = model.distributions[static_cast<std::size_t>(k)];
  const double u = rng.uniform01();
  double acc = 0.0;
  const int n = dist.size();
  for (int w = 0; w < n; ++w) {
    acc += dist.probabilities[static_cast<std::size_t>(w)];
    if (u < acc) return w;
  }
  return n - 1;  // guard against rounding in the cumulative sum
}

Vec sample_outcome(const ScenarioModel& model, int k, Rng& rng) {
  const int w = sample_outcome_index(model, k, rng);
  return model.distributions[static_cast<std::size_t>(k)].support[static_cast<std::size_t>(w)];
}

SlotEffect evaluate_slot(const ScenarioModel& model, int k, const Vec& omega, int action) {
  if (k < 0 || k >= model.K) {
    throw std::invalid_argument("evaluate_slot: option index " + std::to_string(k) + " out of range");
  }
  if (action < 0 || action >= model.num_actions()) {
    throw std::invalid_argument("evaluate_slot: action index " + std::to_string(action) + " out of range");
  }
  const int w = model.find_outcome(k, omega);
  if (w < 0) {
    throw std::invalid_argument("evaluate_slot: outcome vector not in support of option " +
                                std::to_string(k));
  }
  return model.effect(k, w, action);
}

}  // namespace mwl
