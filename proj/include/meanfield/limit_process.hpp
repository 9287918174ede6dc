#ifndef MEANFIELD_LIMIT_PROCESS_HPP_
#define MEANFIELD_LIMIT_PROCESS_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "meanfield/model.hpp"
#include "meanfield/trajectory.hpp"

namespace meanfield {

// Sensible default step for the Euler scheme at horizon t_end.
double default_dt(double t_end);

struct LimitSimOptions {
  std::vector<double> sampling_grid;
};

// Euler-Maruyama on a uniform grid of step dt, with one shared Brownian
// increment per step feeding both coordinates, and exact-in-law resets of Y:
// candidates arrive at rate ||f2||_inf (the containing step is split at the
// candidate time) and are accepted with probability f2(y-)/||f2||_inf.
Trajectory simulate_limit(const ModelSpec& spec, double x0, double y0, double t_end,
                          double dt, std::uint64_t seed,
                          const LimitSimOptions& options = {});

// Terminal state of one thinned limit path driven by a caller-owned RNG
// stream, for replica loops (no recording, no per-call validation).
std::pair<double, double> limit_terminal(const ModelSpec& spec, double x0, double y0,
                                         double t, double dt, Rng& rng);

// Stream-driven trajectory for replica loops (no per-call validation).
Trajectory simulate_limit_stream(const ModelSpec& spec, double x0, double y0,
                                 double t_end, double dt, Rng& rng,
                                 const LimitSimOptions& options = {});

struct AuxPath {
  Trajectory trajectory;          // records carry the cumulative log_weight
  std::vector<double> jump_times;
  double x_end = 0.0;
  double y_end = 0.0;
  double log_weight = 0.0;
};

// Same scheme with every candidate accepted (constant jump rate ||f2||_inf),
// accumulating the Girsanov log-weight
//   sum_n log(f2(y at T_n-)/||f2||_inf) - int_0^t (f2(y_s) - ||f2||_inf) ds
// with left-endpoint quadrature for the integral on the split grid.
AuxPath simulate_auxiliary(const ModelSpec& spec, double x0, double y0, double t_end,
                           double dt, std::uint64_t seed,
                           const LimitSimOptions& options = {});

struct Estimate;  // estimation.hpp

// Reweighted Monte Carlo estimate of E[g(Xbar_t, Ybar_t)] from auxiliary
// paths: mean/stderr of g(x_t, y_t) exp(log_weight) over reps replicas.
Estimate girsanov_estimate(const ModelSpec& spec,
                           const std::function<double(double, double)>& g, double x0,
                           double y0, double t, double dt, std::size_t reps,
                           std::uint64_t seed, unsigned workers = 1);

struct FirstVariationState {
  double t = 0.0;
  double x = 0.0;      // auxiliary X at t
  double y = 0.0;      // auxiliary Y at t
  double dx_dx = 1.0;  // d X_t / d x0
  double dy_dx = 0.0;  // d Y_t / d x0, reset to 0 at jumps of Y
  double dy_dy = 1.0;  // d Y_t / d y0, reset to 0 at jumps of Y
};

// First-variation SDE coupled to the auxiliary path with the same noise:
//   d(dx_dx) = -[a1 + f1(x) + x f1'(x)] dx_dx dt + sigma dx_dx (sqrt f1)'(x) dW
//   d(dy_dx) = -a2 dy_dx dt + sigma dx_dx sqrt(f1(x)) dW
//   d(dy_dy) = -a2 dy_dy dt
// Recorded at the uniform grid steps and at jump times.
std::vector<FirstVariationState> simulate_first_variation(const ModelSpec& spec, double x0,
                                                          double y0, double t_end,
                                                          double dt, std::uint64_t seed);

}  // namespace meanfield

#endif  // MEANFIELD_LIMIT_PROCESS_HPP_
