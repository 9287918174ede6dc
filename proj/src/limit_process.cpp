#include "meanfield/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "meanfield/estimation.hpp"
#include "meanfield/parallel.hpp"

namespace meanfield {

double default_dt(double t_end) { return std::min(1e-3, t_end / 1000.0); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hooks: substep(t, h, x, y, dW) before the state update; jump(t, y_pre)
// after an accepted reset; record(t, x, y, event) at grid and jump times.
template <class Hooks>
std::pair<double, double> run_limit(const ModelSpec& spec, double x0, double y0,
                                    double t_end, double dt, Rng& rng, bool auxiliary,
                                    const std::vector<double>& grid, Hooks& hooks) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  if (t_end < 0.0) throw std::invalid_argument("t_end must be >= 0");
  const double sigma = spec.sigma();
  const double sup2 = spec.f2.sup;
  double t = 0.0, x = x0, y = y0;
  std::size_t step_count = 0;
  std::size_t k = 0;  // completed uniform steps; boundary at (k+1) dt
  std::size_t gi = 0;
  while (gi < grid.size() && grid[gi] <= 0.0) {
    hooks.record(0.0, x, y, Event::Grid);
    ++gi;
  }
  double next_cand = sup2 > 0.0 ? rng.exponential(sup2) : kInf;
  while (t < t_end) {
    const double next_ustep = static_cast<double>(k + 1) * dt;
    const double next_grid = gi < grid.size() ? grid[gi] : kInf;
    const double t_stop = std::min({next_ustep, next_cand, next_grid, t_end});
    const double h = t_stop - t;
    if (h > 0.0) {
      const double f1x = spec.f1(x);
      const double root = std::sqrt(std::max(0.0, f1x));
      const double dW = std::sqrt(h) * rng.normal();
      hooks.substep(t, h, x, y, dW);
      const double diffusion = sigma * root * dW;  // shared by both coordinates
      x += -(spec.alpha1 * x + x * f1x) * h + diffusion;
      y += -spec.alpha2 * y * h + diffusion;
      ++step_count;
      if (!std::isfinite(x) || !std::isfinite(y))
        throw std::runtime_error("non-finite state at step " + std::to_string(step_count));
    }
    t = t_stop;
    if (t == next_cand) {
      const double f2y = spec.f2(y);
      if (f2y > sup2)
        throw std::runtime_error("thinning bound violated: f2(y) exceeds declared sup");
      bool accept = true;
      if (!auxiliary) accept = rng.uniform() * sup2 < f2y;
      if (accept) {
        const double y_pre = y;
        y = 0.0;
        hooks.jump(t, y_pre);
        hooks.record(t, x, y, Event::Reset2);
      }
      next_cand += rng.exponential(sup2);
    }
    while (gi < grid.size() && grid[gi] <= t) {
      hooks.record(t, x, y, Event::Grid);
      ++gi;
    }
    if (t == next_ustep) ++k;
  }
  return {x, y};
}

struct PlainHooks {
  void substep(double, double, double, double, double) {}
  void jump(double, double) {}
  void record(double, double, double, Event) {}
};

struct WeightHooks {
  const ModelSpec* spec = nullptr;
  double log_weight = 0.0;

  void substep(double, double h, double, double y, double) {
    log_weight -= (spec->f2(y) - spec->f2.sup) * h;
  }
  void jump(double, double y_pre) {
    log_weight += std::log(spec->f2(y_pre) / spec->f2.sup);
  }
  void record(double, double, double, Event) {}
};

}  // namespace

Trajectory simulate_limit_stream(const ModelSpec& spec, double x0, double y0,
                                 double t_end, double dt, Rng& rng,
                                 const LimitSimOptions& options) {
  struct RecHooks : PlainHooks {
    Trajectory* traj;
    void record(double t, double x, double y, Event e) {
      traj->records.push_back({t, x, y, e, {}, {}});
    }
  } hooks;
  Trajectory traj;
  hooks.traj = &traj;
  run_limit(spec, x0, y0, t_end, dt, rng, /*auxiliary=*/false, options.sampling_grid, hooks);
  return traj;
}

Trajectory simulate_limit(const ModelSpec& spec, double x0, double y0, double t_end,
                          double dt, std::uint64_t seed, const LimitSimOptions& options) {
  require_valid(spec);
  Rng rng(seed);
  return simulate_limit_stream(spec, x0, y0, t_end, dt, rng, options);
}

std::pair<double, double> limit_terminal(const ModelSpec& spec, double x0, double y0,
                                         double t, double dt, Rng& rng) {
  PlainHooks hooks;
  return run_limit(spec, x0, y0, t, dt, rng, /*auxiliary=*/false, {}, hooks);
}

AuxPath simulate_auxiliary(const ModelSpec& spec, double x0, double y0, double t_end,
                           double dt, std::uint64_t seed, const LimitSimOptions& options) {
  require_valid(spec);
  struct AuxHooks : WeightHooks {
    AuxPath* path;
    void jump(double t, double y_pre) {
      WeightHooks::jump(t, y_pre);
      path->jump_times.push_back(t);
    }
    void record(double t, double x, double y, Event e) {
      path->trajectory.records.push_back({t, x, y, e, {}, log_weight});
    }
  } hooks;
  AuxPath path;
  hooks.spec = &spec;
  hooks.path = &path;
  Rng rng(seed);
  auto [xe, ye] =
      run_limit(spec, x0, y0, t_end, dt, rng, /*auxiliary=*/true, options.sampling_grid, hooks);
  path.x_end = xe;
  path.y_end = ye;
  path.log_weight = hooks.log_weight;
  return path;
}

Estimate girsanov_estimate(const ModelSpec& spec,
                           const std::function<double(double, double)>& g, double x0,
                           double y0, double t, double dt, std::size_t reps,
                           std::uint64_t seed, unsigned workers) {
  if (reps < 2) throw std::invalid_argument("reps must be >= 2");
  require_valid(spec);
  auto values = replica_map(reps, seed, workers, [&](std::size_t, Rng& rng) {
    WeightHooks hooks;
    hooks.spec = &spec;
    auto [xe, ye] = run_limit(spec, x0, y0, t, dt, rng, /*auxiliary=*/true, {}, hooks);
    return g(xe, ye) * std::exp(hooks.log_weight);
  });
  const auto ms = reduce_mean_stderr(values);
  Estimate est;
  est.mean = ms.mean;
  est.stderr_ = ms.stderr_;
  est.reps = reps;
  est.digest = "girsanov t=" + format_double(t) + " dt=" + format_double(dt) +
               " seed=" + std::to_string(seed);
  return est;
}

std::vector<FirstVariationState> simulate_first_variation(const ModelSpec& spec, double x0,
                                                          double y0, double t_end,
                                                          double dt, std::uint64_t seed) {
  require_valid(spec);
  if (!spec.f1.differentiable() || !spec.f2.differentiable())
    throw std::invalid_argument("first variation requires analytic rate kinds");
  struct FvHooks {
    const ModelSpec* spec;
    double sigma;
    double dx_dx = 1.0, dy_dx = 0.0, dy_dy = 1.0;
    std::vector<FirstVariationState>* out;

    void substep(double, double h, double x, double, double dW) {
      const double f1x = (*spec).f1(x);
      const double root = std::sqrt(std::max(0.0, f1x));
      const double dxdx0 = dx_dx;
      dx_dx += -(spec->alpha1 + f1x + x * spec->f1.derivative(x, 1)) * dxdx0 * h +
               sigma * dxdx0 * spec->f1.sqrt_derivative(x) * dW;
      dy_dx += -spec->alpha2 * dy_dx * h + sigma * dxdx0 * root * dW;
      dy_dy += -spec->alpha2 * dy_dy * h;
    }
    void jump(double, double) {
      dy_dx = 0.0;
      dy_dy = 0.0;
    }
    void record(double t, double x, double y, Event) {
      out->push_back({t, x, y, dx_dx, dy_dx, dy_dy});
    }
  } hooks;
  std::vector<FirstVariationState> out;
  hooks.spec = &spec;
  hooks.sigma = spec.sigma();
  hooks.out = &out;
  // Record on the uniform grid boundaries.
  std::vector<double> grid;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    grid.push_back(std::min(static_cast<double>(k) * dt, t_end));
  Rng rng(seed);
  run_limit(spec, x0, y0, t_end, dt, rng, /*auxiliary=*/true, grid, hooks);
  return out;
}

}  // namespace meanfield
