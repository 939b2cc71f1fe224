#include "mwl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mwl/parallel.hpp"
#include "mwl/rng.hpp"
#include "mwl/simplex.hpp"
#include "mwl/weights.hpp"

namespace mwl {

namespace {

void check_distribution(const Vec& p, const std::string& what) {
  double total = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw std::invalid_argument("policy: negative probability in " + what);
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("policy: " + what + " sums to " + std::to_string(total));
  }
}

}  // namespace

void StationaryPolicy::validate(const ScenarioModel& model, double theta) const {
  if (static_cast<int>(stage1.size()) != model.K) {
    throw std::invalid_argument("policy: stage-1 distribution size mismatch");
  }
  check_distribution(stage1, "stage-1 distribution");
  const double floor = theta / static_cast<double>(model.K);
  for (int k = 0; k < model.K; ++k) {
    if (stage1[static_cast<std::size_t>(k)] < floor - 1e-9) {
      throw std::invalid_argument("policy: option " + std::to_string(k) +
                                  " chosen below the exploration floor");
    }
  }
  if (static_cast<int>(stage2.size()) != model.K) {
    throw std::invalid_argument("policy: stage-2 table size mismatch");
  }
  for (int k = 0; k < model.K; ++k) {
    const auto& rows = stage2[static_cast<std::size_t>(k)];
    if (static_cast<int>(rows.size()) != model.distributions[static_cast<std::size_t>(k)].size()) {
      throw std::invalid_argument("policy: stage-2 outcome rows mismatch at option " + std::to_string(k));
    }
    for (const Vec& row : rows) {
      if (static_cast<int>(row.size()) != model.num_actions()) {
        throw std::invalid_argument("policy: stage-2 action row size mismatch");
      }
      check_distribution(row, "stage-2 row");
    }
  }
}

double exact_e(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
               const QueueState& theta, double v) {
  const auto& dist = model.distributions[static_cast<std::size_t>(k)];
  return par::sum_blocked(static_cast<std::size_t>(dist.size()), [&](std::size_t w) {
    return dist.probabilities[w] * best_stage2(model, obj, k, static_cast<int>(w), theta, v).value;
  });
}

double exact_e_serial(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
                      const QueueState& theta, double v) {
  const auto& dist = model.distributions[static_cast<std::size_t>(k)];
  return par::sum_blocked_serial(static_cast<std::size_t>(dist.size()), [&](std::size_t w) {
    return dist.probabilities[w] * best_stage2(model, obj, k, static_cast<int>(w), theta, v).value;
  });
}

PolicyAverages policy_time_averages(const ScenarioModel& model, const StationaryPolicy& policy) {
  PolicyAverages out;
  out.xbar.assign(static_cast<std::size_t>(model.M), 0.0);
  out.Abar.assign(static_cast<std::size_t>(model.L), 0.0);
  out.mubar.assign(static_cast<std::size_t>(model.L), 0.0);
  for (int k = 0; k < model.K; ++k) {
    const double pk = policy.stage1[static_cast<std::size_t>(k)];
    if (pk == 0.0) continue;
    const auto& dist = model.distributions[static_cast<std::size_t>(k)];
    for (int w = 0; w < dist.size(); ++w) {
      const double pw = pk * dist.probabilities[static_cast<std::size_t>(w)];
      if (pw == 0.0) continue;
      const Vec& act = policy.stage2[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
      for (int i = 0; i < model.num_actions(); ++i) {
        const double p = pw * act[static_cast<std::size_t>(i)];
        if (p == 0.0) continue;
        const SlotEffect& e = model.effect(k, w, i);
        for (int m = 0; m < model.M; ++m) out.xbar[static_cast<std::size_t>(m)] += p * e.x[static_cast<std::size_t>(m)];
        for (int l = 0; l < model.L; ++l) {
          out.Abar[static_cast<std::size_t>(l)] += p * e.A[static_cast<std::size_t>(l)];
          out.mubar[static_cast<std::size_t>(l)] += p * e.mu[static_cast<std::size_t>(l)];
        }
      }
    }
  }
  return out;
}

namespace {

// Flat indexing of occupancy entries (k, w, i).
struct Occupancy {
  std::vector<int> offset;  // per option
  std::vector<int> width;   // support size per option
  int actions = 0;
  int total = 0;

  explicit Occupancy(const ScenarioModel& model) {
    actions = model.num_actions();
    offset.resize(static_cast<std::size_t>(model.K));
    width.resize(static_cast<std::size_t>(model.K));
    for (int k = 0; k < model.K; ++k) {
      offset[static_cast<std::size_t>(k)] = total;
      width[static_cast<std::size_t>(k)] = model.distributions[static_cast<std::size_t>(k)].size();
      total += width[static_cast<std::size_t>(k)] * actions;
    }
  }

  int index(int k, int w, int i) const {
    return offset[static_cast<std::size_t>(k)] + w * actions + i;
  }
};

// Polytope of feasible occupancy measures: normalization, outcome-marginal
// consistency with F_k, the cost constraints, queue stability, and the
// exploration floor. Extra columns (for epigraph variables) are appended
// after the occupancy block.
LinearProgram build_polytope(const ScenarioModel& model, const ObjectiveSpec& obj, double theta,
                             const Occupancy& occ, int extra_cols) {
  LinearProgram lp;
  lp.num_vars = occ.total + extra_cols;

  Vec row(static_cast<std::size_t>(lp.num_vars), 0.0);

  // normalization
  std::fill(row.begin(), row.begin() + occ.total, 1.0);
  lp.eq_rows.push_back(row);
  lp.eq_rhs.push_back(1.0);

  // consistency: sum_i d(k,w,i) = p_{k,w} * pi_k; last outcome row per option
  // is implied and dropped
  for (int k = 0; k < model.K; ++k) {
    const auto& dist = model.distributions[static_cast<std::size_t>(k)];
    for (int w = 0; w + 1 < dist.size(); ++w) {
      std::fill(row.begin(), row.end(), 0.0);
      const double pw = dist.probabilities[static_cast<std::size_t>(w)];
      for (int w2 = 0; w2 < dist.size(); ++w2) {
        for (int i = 0; i < occ.actions; ++i) {
          row[static_cast<std::size_t>(occ.index(k, w2, i))] = (w2 == w ? 1.0 : 0.0) - pw;
        }
      }
      lp.eq_rows.push_back(row);
      lp.eq_rhs.push_back(0.0);
    }
  }

  // h_n(xbar) <= b_n
  for (const ConstraintRow& cr : obj.constraints) {
    std::fill(row.begin(), row.end(), 0.0);
    for (int k = 0; k < model.K; ++k) {
      for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
        for (int i = 0; i < occ.actions; ++i) {
          row[static_cast<std::size_t>(occ.index(k, w, i))] = cr.h(model.effect(k, w, i).x);
        }
      }
    }
    lp.ub_rows.push_back(row);
    lp.ub_rhs.push_back(cr.b);
  }

  // stability: Abar_l - mubar_l <= 0
  for (int l = 0; l < model.L; ++l) {
    std::fill(row.begin(), row.end(), 0.0);
    for (int k = 0; k < model.K; ++k) {
      for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
        for (int i = 0; i < occ.actions; ++i) {
          const SlotEffect& e = model.effect(k, w, i);
          row[static_cast<std::size_t>(occ.index(k, w, i))] =
              e.A[static_cast<std::size_t>(l)] - e.mu[static_cast<std::size_t>(l)];
        }
      }
    }
    lp.ub_rows.push_back(row);
    lp.ub_rhs.push_back(0.0);
  }

  // exploration floor: pi_k >= theta / K
  for (int k = 0; k < model.K; ++k) {
    std::fill(row.begin(), row.end(), 0.0);
    for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
      for (int i = 0; i < occ.actions; ++i) {
        row[static_cast<std::size_t>(occ.index(k, w, i))] = -1.0;
      }
    }
    lp.ub_rows.push_back(row);
    lp.ub_rhs.push_back(-theta / static_cast<double>(model.K));
  }

  return lp;
}

Vec xbar_of(const ScenarioModel& model, const Occupancy& occ, const Vec& d) {
  Vec xbar(static_cast<std::size_t>(model.M), 0.0);
  for (int k = 0; k < model.K; ++k) {
    for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
      for (int i = 0; i < occ.actions; ++i) {
        const double p = d[static_cast<std::size_t>(occ.index(k, w, i))];
        if (p == 0.0) continue;
        const Vec& x = model.effect(k, w, i).x;
        for (int m = 0; m < model.M; ++m) xbar[static_cast<std::size_t>(m)] += p * x[static_cast<std::size_t>(m)];
      }
    }
  }
  return xbar;
}

StationaryPolicy policy_from_occupancy(const ScenarioModel& model, const Occupancy& occ,
                                       const Vec& d) {
  StationaryPolicy pol;
  pol.stage1.assign(static_cast<std::size_t>(model.K), 0.0);
  pol.stage2.resize(static_cast<std::size_t>(model.K));
  for (int k = 0; k < model.K; ++k) {
    const int nw = occ.width[static_cast<std::size_t>(k)];
    pol.stage2[static_cast<std::size_t>(k)].assign(
        static_cast<std::size_t>(nw), Vec(static_cast<std::size_t>(occ.actions), 0.0));
    double pk = 0.0;
    for (int w = 0; w < nw; ++w) {
      for (int i = 0; i < occ.actions; ++i) {
        pk += d[static_cast<std::size_t>(occ.index(k, w, i))];
      }
    }
    pk = std::max(pk, 0.0);
    pol.stage1[static_cast<std::size_t>(k)] = pk;
    for (int w = 0; w < nw; ++w) {
      Vec& act = pol.stage2[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
      double mass = 0.0;
      for (int i = 0; i < occ.actions; ++i) {
        act[static_cast<std::size_t>(i)] = std::max(d[static_cast<std::size_t>(occ.index(k, w, i))], 0.0);
        mass += act[static_cast<std::size_t>(i)];
      }
      if (mass > 1e-15) {
        for (double& a : act) a /= mass;
      } else {
        std::fill(act.begin(), act.end(), 1.0 / static_cast<double>(occ.actions));
      }
    }
  }
  // clean tiny negativity / rounding in the stage-1 marginal
  double total = 0.0;
  for (double& p : pol.stage1) total += p;
  if (total > 0.0) {
    for (double& p : pol.stage1) p /= total;
  } else {
    std::fill(pol.stage1.begin(), pol.stage1.end(), 1.0 / static_cast<double>(model.K));
  }
  return pol;
}

StationaryPolicy random_policy(const ScenarioModel& model, double theta, Rng& rng) {
  StationaryPolicy pol;
  const int K = model.K;
  pol.stage1.assign(static_cast<std::size_t>(K), 0.0);
  double total = 0.0;
  for (int k = 0; k < K; ++k) {
    const double e = -std::log(1.0 - rng.uniform01() + 1e-300);
    pol.stage1[static_cast<std::size_t>(k)] = e;
    total += e;
  }
  const double floor = theta / static_cast<double>(K);
  for (int k = 0; k < K; ++k) {
    pol.stage1[static_cast<std::size_t>(k)] =
        floor + (1.0 - theta) * pol.stage1[static_cast<std::size_t>(k)] / total;
  }
  pol.stage2.resize(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const int nw = model.distributions[static_cast<std::size_t>(k)].size();
    pol.stage2[static_cast<std::size_t>(k)].assign(
        static_cast<std::size_t>(nw), Vec(static_cast<std::size_t>(model.num_actions()), 0.0));
    for (int w = 0; w < nw; ++w) {
      Vec& act = pol.stage2[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
      const double family = rng.uniform01();
      if (family < 0.4) {
        double mass = 0.0;
        for (double& a : act) {
          a = -std::log(1.0 - rng.uniform01() + 1e-300);
          mass += a;
        }
        for (double& a : act) a /= mass;
      } else if (family < 0.7) {
        act[static_cast<std::size_t>(rng.uniform_index(model.num_actions()))] = 1.0;
      } else {
        // service-greedy: keeps a stability-leaning family in the pool
        double best_mu = -1.0;
        std::vector<int> ties;
        for (int i = 0; i < model.num_actions(); ++i) {
          double mu = 0.0;
          for (double v : model.effect(k, w, i).mu) mu += v;
          if (mu > best_mu + 1e-12) {
            best_mu = mu;
            ties.assign(1, i);
          } else if (mu > best_mu - 1e-12) {
            ties.push_back(i);
          }
        }
        act[static_cast<std::size_t>(ties[static_cast<std::size_t>(rng.uniform_index(
            static_cast<int>(ties.size())))])] = 1.0;
      }
    }
  }
  return pol;
}

bool policy_feasible(const ScenarioModel& model, const ObjectiveSpec& obj,
                     const PolicyAverages& avg) {
  for (const ConstraintRow& cr : obj.constraints) {
    if (cr.h(avg.xbar) > cr.b + 1e-12) return false;
  }
  for (int l = 0; l < model.L; ++l) {
    if (avg.Abar[static_cast<std::size_t>(l)] > avg.mubar[static_cast<std::size_t>(l)] + 1e-12) return false;
  }
  return true;
}

template <bool Parallel>
double best_random_policy_impl(const ScenarioModel& model, const ObjectiveSpec& obj, double theta,
                               int count, std::uint64_t seed) {
  if (count <= 0) return std::numeric_limits<double>::infinity();
  std::vector<double> values(static_cast<std::size_t>(count),
                             std::numeric_limits<double>::infinity());
  auto body = [&](std::size_t i) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(i));
    const StationaryPolicy pol = random_policy(model, theta, rng);
    const PolicyAverages avg = policy_time_averages(model, pol);
    if (policy_feasible(model, obj, avg)) values[i] = obj.f_value(avg.xbar);
  };
  if constexpr (Parallel) {
    par::for_each(static_cast<std::size_t>(count), body);
  } else {
    par::for_each_serial(static_cast<std::size_t>(count), body);
  }
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, v);
  return best;
}

}  // namespace

double best_random_feasible_policy(const ScenarioModel& model, const ObjectiveSpec& obj,
                                   double theta, int count, std::uint64_t seed) {
  return best_random_policy_impl<true>(model, obj, theta, count, seed);
}

double best_random_feasible_policy_serial(const ScenarioModel& model, const ObjectiveSpec& obj,
                                          double theta, int count, std::uint64_t seed) {
  return best_random_policy_impl<false>(model, obj, theta, count, seed);
}

FstarResult solve_fstar(const ScenarioModel& model, const ObjectiveSpec& obj, double theta,
                        const FstarOptions& options) {
  const Occupancy occ(model);
  if (occ.total > 10000) {
    throw std::invalid_argument("solve_fstar: scenario exceeds the enumeration size guard (" +
                                std::to_string(occ.total) + " occupancy entries)");
  }

  FstarResult res;
  const int mt = obj.num_nonlinear();
  Vec d;

  if (mt == 0) {
    LinearProgram lp = build_polytope(model, obj, theta, occ, 0);
    lp.cost.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
    for (int k = 0; k < model.K; ++k) {
      for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
        for (int i = 0; i < occ.actions; ++i) {
          lp.cost[static_cast<std::size_t>(occ.index(k, w, i))] = obj.linear(model.effect(k, w, i).x);
        }
      }
    }
    const LpResult sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible) {
      res.message = "no stationary policy satisfies the constraints at theta = " + std::to_string(theta);
      return res;
    }
    if (sol.status == LpStatus::unbounded) {
      throw std::runtime_error("solve_fstar: bounded polytope reported unbounded");
    }
    d.assign(sol.x.begin(), sol.x.begin() + occ.total);
    res.value = sol.value;
    res.optimality_gap_bound = 0.0;
  } else {
    // Epigraph cutting planes: minimize l(xbar) + sum_m tau_m with tau_m
    // lower-bounded by tangents of the convex term at an adaptively refined
    // set of points. tau columns are shifted to keep all LP variables >= 0.
    Vec shift(static_cast<std::size_t>(mt), 0.0);
    std::vector<Vec> cut_points(static_cast<std::size_t>(mt));
    for (int j = 0; j < mt; ++j) {
      const int m = obj.nonlinear_indices[static_cast<std::size_t>(j)];
      const double lo = model.bounds.x_min[static_cast<std::size_t>(m)];
      const double hi = model.bounds.x_max[static_cast<std::size_t>(m)];
      for (int g = 0; g <= 16; ++g) {
        cut_points[static_cast<std::size_t>(j)].push_back(lo + (hi - lo) * g / 16.0);
      }
      double fmin = std::numeric_limits<double>::infinity();
      for (double c : cut_points[static_cast<std::size_t>(j)]) {
        fmin = std::min(fmin, obj.nonlinear[static_cast<std::size_t>(j)].eval(c));
      }
      shift[static_cast<std::size_t>(j)] = std::max(0.0, -fmin) + 1.0;
    }

    double value = 0.0;
    for (int round = 0; round < options.max_cut_rounds; ++round) {
      LinearProgram lp = build_polytope(model, obj, theta, occ, mt);
      lp.cost.assign(static_cast<std::size_t>(lp.num_vars), 0.0);
      for (int k = 0; k < model.K; ++k) {
        for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
          for (int i = 0; i < occ.actions; ++i) {
            lp.cost[static_cast<std::size_t>(occ.index(k, w, i))] = obj.linear(model.effect(k, w, i).x);
          }
        }
      }
      for (int j = 0; j < mt; ++j) lp.cost[static_cast<std::size_t>(occ.total + j)] = 1.0;

      Vec row(static_cast<std::size_t>(lp.num_vars), 0.0);
      for (int j = 0; j < mt; ++j) {
        const int m = obj.nonlinear_indices[static_cast<std::size_t>(j)];
        const ConvexTerm& term = obj.nonlinear[static_cast<std::size_t>(j)];
        for (double c : cut_points[static_cast<std::size_t>(j)]) {
          // tau_j >= f(c) + f'(c) (xbar_m - c), with tau_j = col - shift_j
          std::fill(row.begin(), row.end(), 0.0);
          const double slope = term.derivative(c);
          for (int k = 0; k < model.K; ++k) {
            for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
              for (int i = 0; i < occ.actions; ++i) {
                row[static_cast<std::size_t>(occ.index(k, w, i))] =
                    slope * model.effect(k, w, i).x[static_cast<std::size_t>(m)];
              }
            }
          }
          row[static_cast<std::size_t>(occ.total + j)] = -1.0;
          lp.ub_rows.push_back(row);
          lp.ub_rhs.push_back(-term.eval(c) + slope * c - shift[static_cast<std::size_t>(j)]);
        }
      }

      const LpResult sol = solve_lp(lp);
      if (sol.status == LpStatus::infeasible) {
        res.message = "no stationary policy satisfies the constraints at theta = " + std::to_string(theta);
        return res;
      }
      if (sol.status == LpStatus::unbounded) {
        throw std::runtime_error("solve_fstar: cutting-plane relaxation unbounded");
      }

      d.assign(sol.x.begin(), sol.x.begin() + occ.total);
      const Vec xbar = xbar_of(model, occ, d);
      value = obj.f_value(xbar);

      // largest displacement between the epigraph relaxation and the true term
      double violation = 0.0;
      for (int j = 0; j < mt; ++j) {
        const int m = obj.nonlinear_indices[static_cast<std::size_t>(j)];
        const double tau = sol.x[static_cast<std::size_t>(occ.total + j)] - shift[static_cast<std::size_t>(j)];
        violation = std::max(
            violation, obj.nonlinear[static_cast<std::size_t>(j)].eval(xbar[static_cast<std::size_t>(m)]) - tau);
        cut_points[static_cast<std::size_t>(j)].push_back(xbar[static_cast<std::size_t>(m)]);
      }
      if (violation <= options.cut_tol) break;
    }
    res.value = value;

    // Linearization certificate: minimize the tangent plane at the solution
    // over the polytope; the difference bounds the remaining optimality gap.
    const Vec xbar = xbar_of(model, occ, d);
    Vec grad = obj.linear.coeff;
    for (int j = 0; j < mt; ++j) {
      const int m = obj.nonlinear_indices[static_cast<std::size_t>(j)];
      grad[static_cast<std::size_t>(m)] +=
          obj.nonlinear[static_cast<std::size_t>(j)].derivative(xbar[static_cast<std::size_t>(m)]);
    }
    LinearProgram lmo = build_polytope(model, obj, theta, occ, 0);
    lmo.cost.assign(static_cast<std::size_t>(lmo.num_vars), 0.0);
    for (int k = 0; k < model.K; ++k) {
      for (int w = 0; w < occ.width[static_cast<std::size_t>(k)]; ++w) {
        for (int i = 0; i < occ.actions; ++i) {
          lmo.cost[static_cast<std::size_t>(occ.index(k, w, i))] = dot(grad, model.effect(k, w, i).x);
        }
      }
    }
    const LpResult tangent = solve_lp(lmo);
    if (tangent.status == LpStatus::optimal) {
      res.optimality_gap_bound = std::max(0.0, dot(lmo.cost, d) - tangent.value);
    }
  }

  res.feasible = true;
  res.policy = policy_from_occupancy(model, occ, d);
  res.averages = policy_time_averages(model, res.policy);

  const double sampled = best_random_feasible_policy(model, obj, theta, options.certificate_samples,
                                                     options.certificate_seed);
  res.certificate_vacuous = !std::isfinite(sampled);
  res.certificate_margin = res.certificate_vacuous ? 0.0 : res.value - sampled;
  res.certificate_ok = res.certificate_vacuous || !(res.value > sampled + options.tol_fstar);
  return res;
}

}  // namespace mwl
