#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "pinvspec/clt.hpp"
#include "pinvspec/ensemble.hpp"
#include "pinvspec/seeding.hpp"

namespace pinvspec {

// Fixed-order pairwise summation. The reduction order depends only on the
// index order, never on the thread schedule.
double pairwise_sum(const double* values, std::size_t count);
double pairwise_sum(const std::vector<double>& values);

// Evaluate fn(i) for i in [0, count), results gathered by index. fn must be
// a pure function of its index.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> out(count);
  const unsigned workers = std::min<std::size_t>(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;  // delta-method SE of the variance estimate
  double skewness = 0.0;
  double kurtosis_excess = 0.0;
};

SampleStats sample_stats(const std::vector<double>& values);

struct McConfig {
  int p = 200;
  int n = 100;
  EntryLaw law = EntryLaw::gaussian();
  PopulationSpectrum H = PopulationSpectrum::point_mass(1.0);
  TestFunction g = TestFunction::monomial(1);
  int replications = 1000;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;
  int proxy_grid = 2000;
  double max_degenerate_fraction = 0.01;
};

struct McResult {
  SampleStats non_centered;
  SampleStats centered;
  std::vector<double> values_non_centered;  // p (F(g) - proxy(g)) per replicate
  std::vector<double> values_centered;
  double proxy_value = 0.0;  // the common centering p * proxy(g)
  int degenerate_events = 0;
  double paired_diff_mean = 0.0;  // centered - non-centered
  double paired_diff_se = 0.0;
  double var_diff_se = 0.0;  // SE of variance(non-centered) - variance(centered)
};

// Per-replicate statistics p (F^{S+}(g) - proxy(g)) and the centered analogue,
// computed from the companion spectra. Degenerate draws (ill-conditioned Gram
// matrix) are resampled at seed + offset; the run fails when more than the
// configured fraction of replicates needed resampling.
McResult mc_clt_experiment(const McConfig& config);

}  // namespace pinvspec
