#pragma once

#include <string>

#include "mwl/queues.hpp"
#include "mwl/types.hpp"

namespace mwl {

enum class Approach { approach1, approach2, oracle, uniform_random };

Approach approach_from_string(const std::string& s);
std::string to_string(Approach a);

struct SlotDecision {
  int k = 0;
  bool exploration = false;
  int action = 0;
  Vec gamma;
  Vec estimates;  // stage-1 scores used on greedy slots; empty otherwise
};

struct SlotOutcome {
  int omega_index = -1;
  Vec omega;
  Vec x;
  Vec A;
  Vec mu;
  double stage2_value = 0.0;  // attained minimum of the per-slot functional
};

// Per-slot trace handed to the metrics accumulator.
struct SlotRecord {
  SlotIndex t = 0;
  SlotDecision decision;
  SlotOutcome outcome;
  QueueState theta_before;
  QueueState theta_after;
  double v = 0.0;
  int w = 0;
};

}  // namespace mwl
