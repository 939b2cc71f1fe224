// Timing comparison between the OpenMP kernels and their serial references.

#include <chrono>
#include <cstdio>

#include "mwl/estimator.hpp"
#include "mwl/oracle.hpp"
#include "mwl/parallel.hpp"
#include "mwl/rng.hpp"
#include "mwl/scenarios_builtin.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Timing {
  double serial_ms;
  double parallel_ms;
  double value_serial;
  double value_parallel;
};

void report(const char* name, const Timing& t) {
  std::printf("%-28s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n", name, t.serial_ms,
              t.parallel_ms, t.serial_ms / t.parallel_ms,
              t.value_serial == t.value_parallel ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", mwl::par::thread_count());
  const mwl::Scenario sc = mwl::build_downlink_probe();

  // wide synthetic buffer for the approach-1 window kernel
  const int w = 200000;
  mwl::SampleBuffers buffers(sc.model.K, static_cast<std::size_t>(w));
  mwl::QueueState theta = mwl::QueueState::zeros(sc.model.L, sc.objective.num_constraints(),
                                                 sc.objective.num_nonlinear(), 0);
  theta.Q = {40.0, 25.0};
  theta.U = {5.0, 2.0};
  mwl::Rng rng(99);
  for (int i = 0; i < w; ++i) {
    for (int k = 0; k < sc.model.K; ++k) {
      mwl::SampleEntry e;
      e.omega_index = mwl::sample_outcome_index(sc.model, k, rng);
      e.cost = 0.0;
      e.v_at_sample = 50.0;
      e.slot = i;
      buffers.record(k, std::move(e));
    }
  }

  {
    Timing t{};
    auto start = Clock::now();
    t.value_serial =
        mwl::estimate_approach1_serial(sc.model, sc.objective, buffers, 0, theta, 50.0, w);
    t.serial_ms = ms_since(start);
    start = Clock::now();
    t.value_parallel = mwl::estimate_approach1(sc.model, sc.objective, buffers, 0, theta, 50.0, w);
    t.parallel_ms = ms_since(start);
    report("estimate_approach1 (W=2e5)", t);
  }

  {
    // blow the support up so the enumeration is worth parallelizing
    mwl::DownlinkProbeOptions opt;
    opt.L = 8;
    opt.p = mwl::Vec(8, 0.6);
    opt.lambda = mwl::Vec(8, 0.05);
    opt.power_cap = mwl::Vec(8, 0.5);
    const mwl::Scenario wide = mwl::build_downlink_probe(opt);
    mwl::QueueState th = mwl::QueueState::zeros(wide.model.L, wide.objective.num_constraints(),
                                                wide.objective.num_nonlinear(), 0);
    for (int l = 0; l < wide.model.L; ++l) th.Q[static_cast<std::size_t>(l)] = 10.0 + l;
    Timing t{};
    auto start = Clock::now();
    t.value_serial = mwl::exact_e_serial(wide.model, wide.objective, 0, th, 50.0);
    t.serial_ms = ms_since(start);
    start = Clock::now();
    t.value_parallel = mwl::exact_e(wide.model, wide.objective, 0, th, 50.0);
    t.parallel_ms = ms_since(start);
    report("exact_e (2^16 outcomes)", t);
  }

  {
    Timing t{};
    auto start = Clock::now();
    t.value_serial = mwl::best_random_feasible_policy_serial(sc.model, sc.objective, 0.05, 100000, 7);
    t.serial_ms = ms_since(start);
    start = Clock::now();
    t.value_parallel = mwl::best_random_feasible_policy(sc.model, sc.objective, 0.05, 100000, 7);
    t.parallel_ms = ms_since(start);
    report("f* certificate (1e5 draws)", t);
  }

  return 0;
}
