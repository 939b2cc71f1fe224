#include "mwl/estimator.hpp"

#include <algorithm>
#include <stdexcept>

#include "mwl/parallel.hpp"

namespace mwl {

void SampleBuffer::push(SampleEntry entry) {
  if (capacity_ == 0) throw std::logic_error("SampleBuffer: zero capacity");
  if (ring_.size() < capacity_) {
    ring_.push_back(std::move(entry));
  } else {
    ring_[next_] = std::move(entry);
    next_ = (next_ + 1) % capacity_;
  }
  ++total_;
}

const SampleEntry& SampleBuffer::recent(std::size_t i) const {
  if (i >= ring_.size()) throw std::out_of_range("SampleBuffer: recent index out of range");
  if (ring_.size() < capacity_) {
    return ring_[ring_.size() - 1 - i];
  }
  // ring full: newest entry sits just before next_
  const std::size_t newest = (next_ + capacity_ - 1) % capacity_;
  return ring_[(newest + capacity_ - i) % capacity_];
}

SampleBuffers::SampleBuffers(int num_options, std::size_t capacity)
    : buffers_(static_cast<std::size_t>(num_options), SampleBuffer(capacity)) {}

void SampleBuffers::record(int k, SampleEntry entry) {
  if (k < 0 || k >= num_options()) {
    throw std::invalid_argument("SampleBuffers: option index out of range");
  }
  buffers_[static_cast<std::size_t>(k)].push(std::move(entry));
}

long long SampleBuffers::count(int k) const {
  return buffers_[static_cast<std::size_t>(k)].total_recorded();
}

long long SampleBuffers::min_count() const {
  long long m = buffers_.empty() ? 0 : buffers_.front().total_recorded();
  for (const auto& b : buffers_) m = std::min(m, b.total_recorded());
  return m;
}

int SampleBuffers::window(int w_hat) const {
  const long long rand_cap = min_count();
  if (rand_cap < 1) {
    throw std::logic_error("SampleBuffers: window requested before initialization completed");
  }
  return static_cast<int>(std::min<long long>(w_hat, rand_cap));
}

namespace {

std::size_t usable(const SampleBuffer& buf, int w) {
  return std::min<std::size_t>(buf.size(), w <= 0 ? 0 : static_cast<std::size_t>(w));
}

}  // namespace

double estimate_approach1(const ScenarioModel& model, const ObjectiveSpec& obj,
                          const SampleBuffers& buffers, int k, const QueueState& theta_now,
                          double v_now, int w) {
  const SampleBuffer& buf = buffers.buffer(k);
  const std::size_t n = usable(buf, w);
  if (n == 0) return 0.0;
  const double total = par::sum_blocked(n, [&](std::size_t i) {
    return best_stage2(model, obj, k, buf.recent(i).omega_index, theta_now, v_now).value;
  });
  return total / static_cast<double>(n);
}

double estimate_approach1_serial(const ScenarioModel& model, const ObjectiveSpec& obj,
                                 const SampleBuffers& buffers, int k, const QueueState& theta_now,
                                 double v_now, int w) {
  const SampleBuffer& buf = buffers.buffer(k);
  const std::size_t n = usable(buf, w);
  if (n == 0) return 0.0;
  const double total = par::sum_blocked_serial(n, [&](std::size_t i) {
    return best_stage2(model, obj, k, buf.recent(i).omega_index, theta_now, v_now).value;
  });
  return total / static_cast<double>(n);
}

double estimate_approach2(const SampleBuffers& buffers, int k, int w) {
  const SampleBuffer& buf = buffers.buffer(k);
  const std::size_t n = usable(buf, w);
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += buf.recent(i).cost;
  return total / static_cast<double>(n);
}

double estimate_approach2_vnorm(const SampleBuffers& buffers, int k, int w) {
  const SampleBuffer& buf = buffers.buffer(k);
  const std::size_t n = usable(buf, w);
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const SampleEntry& e = buf.recent(i);
    total += e.v_at_sample > 0.0 ? e.cost / e.v_at_sample : e.cost;
  }
  return total / static_cast<double>(n);
}

}  // namespace mwl
