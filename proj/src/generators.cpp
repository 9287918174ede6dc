#include "meanfield/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "meanfield/finite_system.hpp"
#include "meanfield/limit_process.hpp"
#include "meanfield/parallel.hpp"
#include "meanfield/quadrature.hpp"

namespace meanfield {

double apply_Abar(const ModelSpec& spec, const TestFunction& g, double x, double y) {
  const double f1x = spec.f1(x);
  const double d1 = g.deriv(1, 0, x, y);
  const double d2 = g.deriv(0, 1, x, y);
  const double hess_sum =
      g.deriv(2, 0, x, y) + 2.0 * g.deriv(1, 1, x, y) + g.deriv(0, 2, x, y);
  return -spec.alpha1 * x * d1 - x * f1x * d1 - spec.alpha2 * y * d2 +
         0.5 * spec.nu.variance() * f1x * hess_sum +
         spec.f2(y) * (g.deriv(0, 0, x, 0.0) - g.deriv(0, 0, x, y));
}

double apply_AN(const ModelSpec& spec, std::int64_t n_particles, const TestFunction& g,
                double x, double y, int quad_nodes) {
  if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
  const double n = static_cast<double>(n_particles);
  const double sqrt_n = std::sqrt(n);
  const double gxy = g.deriv(0, 0, x, y);
  const double integral = expect_under_jump_law(
      spec.nu,
      [&](double u) { return g.deriv(0, 0, x + u / sqrt_n - x / n, y + u / sqrt_n) - gxy; },
      quad_nodes);
  return -spec.alpha1 * x * g.deriv(1, 0, x, y) - spec.alpha2 * y * g.deriv(0, 1, x, y) +
         n * spec.f1(x) * integral + spec.f2(y) * (g.deriv(0, 0, x, 0.0) - gxy);
}

double generator_gap_bound(const ModelSpec& spec, std::int64_t n_particles,
                           const TestFunction& g, double x) {
  const double n = static_cast<double>(n_particles);
  const double f1x = spec.f1(x);
  const double m3 = spec.nu.third_abs_moment();
  return f1x * m3 * g.norm_order_sum(3) / (6.0 * std::sqrt(n)) +
         0.5 * x * x * f1x * g.sup_norm(2, 0) / n;
}

GeneratorReport generator_report(const ModelSpec& spec, std::int64_t n_particles,
                                 const TestFunction& g, double x, double y) {
  GeneratorReport rep;
  rep.x = x;
  rep.y = y;
  rep.n = n_particles;
  rep.value_AN = apply_AN(spec, n_particles, g, x, y);
  rep.value_Abar = apply_Abar(spec, g, x, y);
  rep.gap = std::abs(rep.value_AN - rep.value_Abar);
  rep.bound = generator_gap_bound(spec, n_particles, g, x);
  rep.bound_satisfied = rep.gap <= rep.bound + 1e-12 * (1.0 + rep.bound);
  return rep;
}

DynkinReport dynkin_check(const ModelSpec& spec, std::optional<std::int64_t> n_particles,
                          const TestFunction& g, double x0, double y0, double t,
                          std::size_t reps, double dt, std::uint64_t seed,
                          unsigned workers, std::size_t grid_points) {
  if (reps < 2) throw std::invalid_argument("reps must be >= 2");
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  require_valid(spec);
  std::vector<double> grid(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
    grid[i] = t * static_cast<double>(i) / static_cast<double>(grid_points - 1);
  const double g0 = g(x0, y0);

  auto apply_gen = [&](double x, double y) {
    return n_particles ? apply_AN(spec, *n_particles, g, x, y) : apply_Abar(spec, g, x, y);
  };

  std::vector<double> lhs(reps), rhs(reps);
  replica_map(reps, seed, workers, [&](std::size_t r, Rng& rng) {
    std::vector<std::pair<double, std::pair<double, double>>> states;
    states.reserve(grid_points);
    Trajectory traj;
    if (n_particles) {
      FiniteSimOptions opt;
      opt.sampling_grid = grid;
      traj = simulate_finite_stream(spec, *n_particles, x0, y0, t, rng, opt);
    } else {
      LimitSimOptions opt;
      opt.sampling_grid = grid;
      traj = simulate_limit_stream(spec, x0, y0, t, dt, rng, opt);
    }
    for (const auto& rec : traj.records)
      if (rec.event == Event::Grid) states.push_back({rec.t, {rec.x, rec.y}});
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
      const double h = states[i + 1].first - states[i].first;
      const double a0 = apply_gen(states[i].second.first, states[i].second.second);
      const double a1 = apply_gen(states[i + 1].second.first, states[i + 1].second.second);
      integral += 0.5 * h * (a0 + a1);
    }
    const auto& last = states.back().second;
    lhs[r] = g(last.first, last.second) - g0;
    rhs[r] = integral;
    return 0.0;
  });

  std::vector<double> diff(reps);
  for (std::size_t r = 0; r < reps; ++r) diff[r] = lhs[r] - rhs[r];
  const auto ml = reduce_mean_stderr(lhs);
  const auto mr = reduce_mean_stderr(rhs);
  const auto md = reduce_mean_stderr(diff);
  return {ml.mean, ml.stderr_, mr.mean, mr.stderr_, md.mean, md.stderr_};
}

}  // namespace meanfield
