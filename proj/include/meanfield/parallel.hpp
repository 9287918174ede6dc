#ifndef MEANFIELD_PARALLEL_HPP_
#define MEANFIELD_PARALLEL_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "meanfield/rng.hpp"

namespace meanfield {

// Runs fn(replica_index, rng) for each replica and returns the per-replica
// values in replica order. Each replica gets its own RNG stream derived from
// (master_seed, replica), so the result is independent of the worker count.
inline std::vector<double> replica_map(std::size_t reps, std::uint64_t master_seed,
                                       unsigned workers,
                                       const std::function<double(std::size_t, Rng&)>& fn) {
  std::vector<double> out(reps);
  if (workers == 0) workers = 1;
  if (workers == 1 || reps < 2 * workers) {
    for (std::size_t r = 0; r < reps; ++r) {
      Rng rng(replica_seed(master_seed, r));
      out[r] = fn(r, rng);
    }
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      // Static contiguous partition; assignment does not depend on timing.
      const std::size_t lo = reps * w / workers;
      const std::size_t hi = reps * (w + 1) / workers;
      for (std::size_t r = lo; r < hi; ++r) {
        Rng rng(replica_seed(master_seed, r));
        out[r] = fn(r, rng);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Fixed-order reduction: summation in replica-index order, so the result is
// bit-identical for a given value vector regardless of worker count.
inline MeanStderr reduce_mean_stderr(const std::vector<double>& values) {
  MeanStderr ms;
  const std::size_t n = values.size();
  if (n == 0) return ms;
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const double mean = static_cast<double>(sum / n);
  long double ss = 0.0L;
  for (double v : values) {
    const long double d = v - mean;
    ss += d * d;
  }
  ms.mean = mean;
  if (n > 1) {
    const double var = static_cast<double>(ss / (n - 1));
    ms.stderr_ = std::sqrt(var / n);
  }
  return ms;
}

}  // namespace meanfield

#endif  // MEANFIELD_PARALLEL_HPP_
