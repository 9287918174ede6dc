#include "meanfield/estimation.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "meanfield/finite_system.hpp"
#include "meanfield/limit_process.hpp"
#include "meanfield/parallel.hpp"
#include "meanfield/trajectory.hpp"

namespace meanfield {

namespace {

std::string digest(const std::string& kind, double x0, double y0, double t,
                   std::uint64_t seed) {
  return kind + " x0=" + format_double(x0) + " y0=" + format_double(y0) +
         " t=" + format_double(t) + " seed=" + std::to_string(seed);
}

}  // namespace

Estimate estimate_semigroup_finite(const ModelSpec& spec, std::int64_t n_particles,
                                   const TestFn& g, double x0, double y0, double t,
                                   std::size_t reps, std::uint64_t seed, unsigned workers) {
  if (reps < 2) throw std::invalid_argument("reps must be >= 2");
  require_valid(spec);
  auto values = replica_map(reps, seed, workers, [&](std::size_t, Rng& rng) {
    auto [x, y] = terminal_sample(spec, n_particles, x0, y0, t, rng);
    return g(x, y);
  });
  const auto ms = reduce_mean_stderr(values);
  return {ms.mean, ms.stderr_, reps,
          digest("finite N=" + std::to_string(n_particles), x0, y0, t, seed)};
}

Estimate estimate_semigroup_limit(const ModelSpec& spec, const TestFn& g, double x0,
                                  double y0, double t, std::size_t reps, double dt,
                                  std::uint64_t seed, unsigned workers) {
  if (reps < 2) throw std::invalid_argument("reps must be >= 2");
  require_valid(spec);
  auto values = replica_map(reps, seed, workers, [&](std::size_t, Rng& rng) {
    auto [x, y] = limit_terminal(spec, x0, y0, t, dt, rng);
    return g(x, y);
  });
  const auto ms = reduce_mean_stderr(values);
  return {ms.mean, ms.stderr_, reps,
          digest("limit dt=" + format_double(dt), x0, y0, t, seed)};
}

RateReport convergence_study(const ModelSpec& spec, const TestFn& g, double x0, double y0,
                             double t, const std::vector<std::int64_t>& n_list,
                             std::size_t reps, double dt, std::uint64_t seed,
                             const ConvergenceStudyOptions& options) {
  if (n_list.size() < 4)
    throw std::invalid_argument("n_list needs >= 4 values");
  {
    const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
    if (*hi < 4 * *lo) throw std::invalid_argument("n_list must span >= 2 octaves");
  }
  RateReport report;
  const double dt_ref = std::min(dt, options.limit_dt_factor * t);
  const auto limit = estimate_semigroup_limit(spec, g, x0, y0, t,
                                              options.limit_reps_factor * reps, dt_ref,
                                              splitmix64(seed ^ 0x1f123bb5159a55e5ULL),
                                              options.workers);
  report.mean_limit = limit.mean;
  report.stderr_limit = limit.stderr_;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const auto est = estimate_semigroup_finite(spec, n_list[i], g, x0, y0, t, reps,
                                               splitmix64(seed + i + 1), options.workers);
    RatePoint p;
    p.n = n_list[i];
    p.mean_n = est.mean;
    p.stderr_n = est.stderr_;
    p.error = std::abs(est.mean - limit.mean);
    p.combined_stderr = std::sqrt(est.stderr_ * est.stderr_ + limit.stderr_ * limit.stderr_);
    p.noise_dominated = p.error < 3.0 * p.combined_stderr;
    report.points.push_back(p);
  }

  std::vector<double> lx, ly;
  for (const auto& p : report.points) {
    if (p.noise_dominated || p.error <= 0.0) continue;
    lx.push_back(std::log(static_cast<double>(p.n)));
    ly.push_back(std::log(p.error));
  }
  report.points_used = lx.size();
  if (lx.size() < 3) {
    report.conclusive = false;
    return report;
  }
  // Ordinary least squares with a t-based 95% interval on the slope.
  const std::size_t m = lx.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - intercept - slope * lx[i];
    rss += r * r;
  }
  report.slope = slope;
  if (m > 2) {
    const double se = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
    boost::math::students_t dist(static_cast<double>(m - 2));
    const double q = boost::math::quantile(dist, 0.975);
    report.slope_ci_lo = slope - q * se;
    report.slope_ci_hi = slope + q * se;
  } else {
    report.slope_ci_lo = report.slope_ci_hi = slope;
  }
  report.conclusive = true;
  return report;
}

MomentReport moment_check(const ModelSpec& spec, std::int64_t n_particles, double x0,
                          double t, std::size_t reps, std::uint64_t seed, unsigned workers) {
  if (reps < 1000) throw std::invalid_argument("moment_check needs reps >= 1000");
  require_valid(spec);
  auto values = replica_map(reps, seed, workers, [&](std::size_t, Rng& rng) {
    auto [x, y] = terminal_sample(spec, n_particles, x0, 0.0, t, rng);
    (void)y;
    return x * x;
  });
  const auto ms = reduce_mean_stderr(values);
  MomentReport rep;
  rep.estimate = ms.mean;
  rep.stderr_ = ms.stderr_;
  rep.bound = (x0 * x0 + spec.nu.variance() * spec.f1.sup * t) * std::exp(t);
  rep.pass = rep.estimate <= rep.bound + 3.0 * rep.stderr_;
  return rep;
}

LimitMomentReport limit_moment_check(const ModelSpec& spec, double x0, double y0,
                                     const std::vector<double>& t_grid, std::size_t reps,
                                     double dt, std::uint64_t seed, unsigned workers) {
  require_valid(spec);
  LimitMomentReport rep;
  rep.all_finite = true;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    auto x2 = replica_map(reps, splitmix64(seed + 2 * i), workers,
                          [&](std::size_t, Rng& rng) {
                            auto [x, y] = limit_terminal(spec, x0, y0, t, dt, rng);
                            (void)y;
                            return x * x;
                          });
    auto y2 = replica_map(reps, splitmix64(seed + 2 * i + 1), workers,
                          [&](std::size_t, Rng& rng) {
                            auto [x, y] = limit_terminal(spec, x0, y0, t, dt, rng);
                            (void)x;
                            return y * y;
                          });
    const auto mx = reduce_mean_stderr(x2);
    const auto my = reduce_mean_stderr(y2);
    rep.points.push_back({t, mx.mean, mx.stderr_, my.mean, my.stderr_});
    if (!std::isfinite(mx.mean) || !std::isfinite(my.mean)) rep.all_finite = false;
  }
  return rep;
}

}  // namespace meanfield
