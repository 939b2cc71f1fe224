#pragma once

#include <cstddef>
#include <vector>

#include "mwl/queues.hpp"
#include "mwl/scenario.hpp"
#include "mwl/weights.hpp"

namespace mwl {

// One stored exploration event. Approach 1 re-evaluates the outcome against
// current backlogs; Approach 2 reuses the realized cost. The queue snapshot
// and sampling-time V are kept for diagnostics and audits.
struct SampleEntry {
  int omega_index = -1;
  Vec omega;
  double cost = 0.0;
  double v_at_sample = 0.0;
  QueueState theta;
  SlotIndex slot = 0;
};

// Fixed-capacity ring of the most recent exploration samples for one option.
class SampleBuffer {
 public:
  SampleBuffer() = default;
  explicit SampleBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(SampleEntry entry);
  long long total_recorded() const { return total_; }
  std::size_t size() const { return ring_.size(); }
  // i-th most recent entry, i = 0 is the newest
  const SampleEntry& recent(std::size_t i) const;

 private:
  std::vector<SampleEntry> ring_;
  std::size_t capacity_ = 0;
  std::size_t next_ = 0;  // slot that the next push overwrites once full
  long long total_ = 0;
};

// Per-option sample store plus the exploration-event counters feeding the
// window rule W(t) = min[What, W_rand(t)].
class SampleBuffers {
 public:
  SampleBuffers() = default;
  SampleBuffers(int num_options, std::size_t capacity);

  void record(int k, SampleEntry entry);
  long long count(int k) const;
  long long min_count() const;  // W_rand
  int num_options() const { return static_cast<int>(buffers_.size()); }
  const SampleBuffer& buffer(int k) const { return buffers_[static_cast<std::size_t>(k)]; }

  // min[What, W_rand]; throws if any option has no samples yet
  int window(int w_hat) const;

 private:
  std::vector<SampleBuffer> buffers_;
};

// Approach 1: average of min_I Y_k over the stored outcomes, re-evaluated at
// the current queue state and V. Averages over fewer entries when fewer than
// w exist; 0.0 with no entries.
double estimate_approach1(const ScenarioModel& model, const ObjectiveSpec& obj,
                          const SampleBuffers& buffers, int k, const QueueState& theta_now,
                          double v_now, int w);

// Serial reference for the kernel above (identical result, no OpenMP).
double estimate_approach1_serial(const ScenarioModel& model, const ObjectiveSpec& obj,
                                 const SampleBuffers& buffers, int k, const QueueState& theta_now,
                                 double v_now, int w);

// Approach 2: plain average of the stored realized costs.
double estimate_approach2(const SampleBuffers& buffers, int k, int w);

// Diagnostic variant normalizing each stored cost by its sampling-time V.
double estimate_approach2_vnorm(const SampleBuffers& buffers, int k, int w);

}  // namespace mwl
