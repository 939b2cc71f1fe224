#include "mwl/scenarios_builtin.hpp"

#include <cmath>
#include <stdexcept>

namespace mwl {

namespace {

// all 0/1 vectors of the given length, in binary counting order
std::vector<Vec> bit_patterns(int n) {
  std::vector<Vec> out;
  const int count = 1 << n;
  out.reserve(static_cast<std::size_t>(count));
  for (int b = 0; b < count; ++b) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = (b >> j) & 1 ? 1.0 : 0.0;
    out.push_back(std::move(v));
  }
  return out;
}

double bernoulli_mass(const Vec& bits, const Vec& p) {
  double mass = 1.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    mass *= bits[i] > 0.5 ? p[i] : 1.0 - p[i];
  }
  return mass;
}

}  // namespace

Scenario build_downlink_probe(const DownlinkProbeOptions& opt) {
  const int L = opt.L;
  if (L < 1) throw std::invalid_argument("downlink-probe: need at least one channel");
  if (static_cast<int>(opt.p.size()) != L || static_cast<int>(opt.lambda.size()) != L ||
      static_cast<int>(opt.power_cap.size()) != L) {
    throw std::invalid_argument("downlink-probe: p, lambda, power_cap must have length L");
  }
  for (int l = 0; l < L; ++l) {
    if (opt.p[static_cast<std::size_t>(l)] <= 0.0 || opt.p[static_cast<std::size_t>(l)] > 1.0 ||
        opt.lambda[static_cast<std::size_t>(l)] < 0.0 || opt.lambda[static_cast<std::size_t>(l)] > 1.0) {
      throw std::invalid_argument("downlink-probe: probabilities out of range");
    }
  }
  if (opt.c_meas < 0.0 || opt.c_tx < 0.0) throw std::invalid_argument("downlink-probe: negative power");
  if (opt.packet_size <= 0.0) throw std::invalid_argument("downlink-probe: packet size must be positive");

  Scenario sc;
  ScenarioModel& m = sc.model;
  m.name = "downlink-probe";
  m.K = L + 2;  // measure, blind per channel, idle
  m.L = L;
  m.M = L + 1;  // measurement power + per-link transmit power
  m.sigma_default = 1.0;

  // omega = (channel states 0..L-1, arrival indicators L..2L-1)
  const std::vector<Vec> arrivals = bit_patterns(L);
  const int kMeasure = 0;
  const int kIdle = L + 1;

  m.distributions.resize(static_cast<std::size_t>(m.K));
  for (int k = 0; k < m.K; ++k) {
    OutcomeDistribution dist;
    std::vector<Vec> channel_part;
    if (k == kMeasure) {
      channel_part = bit_patterns(L);  // all channels revealed
    } else if (k != kIdle) {
      const int ch = k - 1;
      channel_part.resize(2, Vec(static_cast<std::size_t>(L), 0.0));
      channel_part[1][static_cast<std::size_t>(ch)] = 1.0;  // only the probed channel
    } else {
      channel_part.assign(1, Vec(static_cast<std::size_t>(L), 0.0));
    }
    for (const Vec& ch : channel_part) {
      double ch_mass = 1.0;
      if (k == kMeasure) {
        ch_mass = bernoulli_mass(ch, opt.p);
      } else if (k != kIdle) {
        const int probed = k - 1;
        const double pl = opt.p[static_cast<std::size_t>(probed)];
        ch_mass = ch[static_cast<std::size_t>(probed)] > 0.5 ? pl : 1.0 - pl;
      }
      for (const Vec& arr : arrivals) {
        Vec omega = ch;
        omega.insert(omega.end(), arr.begin(), arr.end());
        dist.support.push_back(std::move(omega));
        dist.probabilities.push_back(ch_mass * bernoulli_mass(arr, opt.lambda));
      }
    }
    m.distributions[static_cast<std::size_t>(k)] = std::move(dist);
  }

  m.actions.push_back("idle");
  for (int l = 0; l < L; ++l) m.actions.push_back("serve-" + std::to_string(l));

  m.table.resize(static_cast<std::size_t>(m.K));
  for (int k = 0; k < m.K; ++k) {
    const auto& dist = m.distributions[static_cast<std::size_t>(k)];
    m.table[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(dist.size()));
    for (int w = 0; w < dist.size(); ++w) {
      const Vec& omega = dist.support[static_cast<std::size_t>(w)];
      auto& per_action = m.table[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
      per_action.resize(static_cast<std::size_t>(m.num_actions()));
      for (int i = 0; i < m.num_actions(); ++i) {
        SlotEffect e;
        e.x.assign(static_cast<std::size_t>(m.M), 0.0);
        e.A.assign(static_cast<std::size_t>(L), 0.0);
        e.mu.assign(static_cast<std::size_t>(L), 0.0);
        for (int l = 0; l < L; ++l) {
          e.A[static_cast<std::size_t>(l)] = opt.packet_size * omega[static_cast<std::size_t>(L + l)];
        }
        if (k == kMeasure) {
          e.x[0] = opt.c_meas;
          if (i >= 1) {
            const int serve = i - 1;
            e.x[static_cast<std::size_t>(1 + serve)] = opt.c_tx;
            e.mu[static_cast<std::size_t>(serve)] =
                opt.packet_size * omega[static_cast<std::size_t>(serve)];
          }
        } else if (k != kIdle) {
          // blind transmission committed at stage 1; stage-2 is immaterial
          const int ch = k - 1;
          e.x[static_cast<std::size_t>(1 + ch)] = opt.c_tx;
          e.mu[static_cast<std::size_t>(ch)] = opt.packet_size * omega[static_cast<std::size_t>(ch)];
        }
        per_action[static_cast<std::size_t>(i)] = std::move(e);
      }
    }
  }

  m.bounds.x_min.assign(static_cast<std::size_t>(m.M), 0.0);
  m.bounds.x_max.assign(static_cast<std::size_t>(m.M), opt.c_tx);
  m.bounds.x_max[0] = opt.c_meas;
  m.bounds.A_max.assign(static_cast<std::size_t>(L), opt.packet_size);
  m.bounds.mu_max.assign(static_cast<std::size_t>(L), opt.packet_size);

  ObjectiveSpec& obj = sc.objective;
  obj.linear.coeff.assign(static_cast<std::size_t>(m.M), 1.0);  // total average power
  obj.linear.offset = 0.0;
  for (int l = 0; l < L; ++l) {
    ConstraintRow row;
    row.h.coeff.assign(static_cast<std::size_t>(m.M), 0.0);
    row.h.coeff[static_cast<std::size_t>(1 + l)] = 1.0;
    row.h.offset = 0.0;
    row.b = opt.power_cap[static_cast<std::size_t>(l)];
    obj.constraints.push_back(std::move(row));
  }

  m.validate();
  obj.validate(m.M);
  return sc;
}

Scenario build_utility_fair(const UtilityFairOptions& opt) {
  if (opt.mode0_p.size() != 2 || opt.mode1_p.size() != 2) {
    throw std::invalid_argument("utility-fair: mode probabilities must have length 2");
  }

  Scenario sc;
  ScenarioModel& m = sc.model;
  m.name = "utility-fair";
  m.K = 2;
  m.L = 2;
  m.M = 2;
  // the gamma box must stay inside the domain of log1p, so sigma < 1
  m.sigma_default = 0.5;

  const std::vector<Vec> channels = bit_patterns(2);
  for (int k = 0; k < 2; ++k) {
    const Vec& p = k == 0 ? opt.mode0_p : opt.mode1_p;
    OutcomeDistribution dist;
    for (const Vec& ch : channels) {
      dist.support.push_back(ch);
      dist.probabilities.push_back(bernoulli_mass(ch, p));
    }
    m.distributions.push_back(std::move(dist));
  }

  // action = (admit q0?, admit q1?, serve which queue)
  for (int a0 = 0; a0 <= 1; ++a0) {
    for (int a1 = 0; a1 <= 1; ++a1) {
      for (int s = 0; s < 2; ++s) {
        m.actions.push_back("admit" + std::to_string(a0) + std::to_string(a1) + "-serve" +
                            std::to_string(s));
      }
    }
  }

  m.table.resize(2);
  for (int k = 0; k < 2; ++k) {
    auto& per_outcome = m.table[static_cast<std::size_t>(k)];
    per_outcome.resize(channels.size());
    for (std::size_t w = 0; w < channels.size(); ++w) {
      per_outcome[w].resize(static_cast<std::size_t>(m.num_actions()));
      int i = 0;
      for (int a0 = 0; a0 <= 1; ++a0) {
        for (int a1 = 0; a1 <= 1; ++a1) {
          for (int s = 0; s < 2; ++s) {
            SlotEffect e;
            e.x = {static_cast<double>(a0), static_cast<double>(a1)};
            e.A = e.x;  // admitted work enters the queues
            e.mu = {0.0, 0.0};
            e.mu[static_cast<std::size_t>(s)] = channels[w][static_cast<std::size_t>(s)];
            per_outcome[w][static_cast<std::size_t>(i)] = std::move(e);
            ++i;
          }
        }
      }
    }
  }

  m.bounds.x_min = {0.0, 0.0};
  m.bounds.x_max = {1.0, 1.0};
  m.bounds.A_max = {1.0, 1.0};
  m.bounds.mu_max = {1.0, 1.0};

  ObjectiveSpec& obj = sc.objective;
  obj.linear.coeff = {0.0, 0.0};
  obj.linear.offset = 0.0;
  obj.nonlinear_indices = {0, 1};
  ConvexTerm term;
  term.kind = ConvexTerm::Kind::neg_log1p;
  term.weight = 1.0;
  obj.nonlinear = {term, term};

  m.validate();
  obj.validate(m.M);
  return sc;
}

bool is_builtin_scenario(const std::string& name) {
  return name == "downlink-probe" || name == "utility-fair";
}

Scenario build_scenario(const std::string& name) {
  if (name == "downlink-probe") return build_downlink_probe();
  if (name == "utility-fair") return build_utility_fair();
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (built-ins: downlink-probe, utility-fair)");
}

}  // namespace mwl
