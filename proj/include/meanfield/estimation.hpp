#ifndef MEANFIELD_ESTIMATION_HPP_
#define MEANFIELD_ESTIMATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meanfield/model.hpp"

namespace meanfield {

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t reps = 0;
  std::string digest;
};

using TestFn = std::function<double(double, double)>;

// Monte Carlo P^N_t g(x0, y0) over exact finite-system replicas.
Estimate estimate_semigroup_finite(const ModelSpec& spec, std::int64_t n_particles,
                                   const TestFn& g, double x0, double y0, double t,
                                   std::size_t reps, std::uint64_t seed,
                                   unsigned workers = 1);

// Monte Carlo Pbar_t g(x0, y0) over Euler limit replicas (O(dt) weak bias).
Estimate estimate_semigroup_limit(const ModelSpec& spec, const TestFn& g, double x0,
                                  double y0, double t, std::size_t reps, double dt,
                                  std::uint64_t seed, unsigned workers = 1);

struct RatePoint {
  std::int64_t n = 0;
  double mean_n = 0.0;
  double stderr_n = 0.0;
  double error = 0.0;           // |mean_n - mean_limit|
  double combined_stderr = 0.0;
  bool noise_dominated = false; // error < 3 combined stderr
};

struct RateReport {
  std::vector<RatePoint> points;
  double mean_limit = 0.0;
  double stderr_limit = 0.0;
  double slope = 0.0;
  double slope_ci_lo = 0.0;
  double slope_ci_hi = 0.0;
  std::size_t points_used = 0;
  bool conclusive = false;  // needs >= 3 signal-dominated points
};

struct ConvergenceStudyOptions {
  std::size_t limit_reps_factor = 4;   // reference replicas = factor * reps
  double limit_dt_factor = 1e-4;       // reference dt = factor * t
  unsigned workers = 1;
};

// Empirical semigroup convergence study: e_N = |P^N_t g - Pbar_t g| against a
// single high-accuracy limit estimate, with a log-log least-squares slope
// over the signal-dominated points. Never fits through noise silently.
RateReport convergence_study(const ModelSpec& spec, const TestFn& g, double x0, double y0,
                             double t, const std::vector<std::int64_t>& n_list,
                             std::size_t reps, double dt, std::uint64_t seed,
                             const ConvergenceStudyOptions& options = {});

struct MomentReport {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// Checks MC E[(X^N_t)^2] against the closed-form a priori bound
// (x0^2 + sigma^2 ||f1||_inf t) e^t; passes iff estimate <= bound + 3 stderr.
MomentReport moment_check(const ModelSpec& spec, std::int64_t n_particles, double x0,
                          double t, std::size_t reps, std::uint64_t seed,
                          unsigned workers = 1);

struct LimitMomentPoint {
  double t = 0.0;
  double x2_mean = 0.0;
  double x2_stderr = 0.0;
  double y2_mean = 0.0;
  double y2_stderr = 0.0;
};

struct LimitMomentReport {
  std::vector<LimitMomentPoint> points;
  bool all_finite = false;  // qualitative no-blow-up probe, not a bound check
};

LimitMomentReport limit_moment_check(const ModelSpec& spec, double x0, double y0,
                                     const std::vector<double>& t_grid, std::size_t reps,
                                     double dt, std::uint64_t seed, unsigned workers = 1);

}  // namespace meanfield

#endif  // MEANFIELD_ESTIMATION_HPP_
