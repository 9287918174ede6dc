#include "meanfield/finite_system.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace meanfield {

namespace {

struct FiniteCore {
  const ModelSpec& spec;
  std::int64_t n;
  double t_end;
  double sqrt_n;
  double lambda1;  // N ||f1||_inf
  double lambda;   // dominating total rate

  FiniteCore(const ModelSpec& s, std::int64_t n_particles, double t_end_)
      : spec(s), n(n_particles), t_end(t_end_) {
    if (n < 1) throw std::invalid_argument("n_particles must be >= 1");
    if (t_end < 0.0) throw std::invalid_argument("t_end must be >= 0");
    sqrt_n = std::sqrt(static_cast<double>(n));
    lambda1 = static_cast<double>(n) * spec.f1.sup;
    lambda = lambda1 + spec.f2.sup;
  }

  // Recorder is called as recorder(t, x, y, event, mark).
  template <class Recorder>
  std::pair<double, double> run(double x0, double y0, Rng& rng,
                                const std::vector<double>& grid, bool record_rejected,
                                Recorder&& recorder) const {
    double t = 0.0, x = x0, y = y0;
    auto advance = [&](double t_new) {
      x *= std::exp(-spec.alpha1 * (t_new - t));
      y *= std::exp(-spec.alpha2 * (t_new - t));
      t = t_new;
    };
    std::size_t gi = 0;
    const double inf = std::numeric_limits<double>::infinity();
    while (true) {
      const double t_cand = lambda > 0.0 ? t + rng.exponential(lambda) : inf;
      const double horizon = std::min(t_cand, t_end);
      while (gi < grid.size() && grid[gi] <= horizon) {
        advance(grid[gi]);
        recorder(t, x, y, Event::Grid, 0.0, false);
        ++gi;
      }
      if (t_cand > t_end) break;
      advance(t_cand);
      const double f1x = spec.f1(x);
      if (f1x > spec.f1.sup)
        throw std::runtime_error("thinning bound violated: f1(x) exceeds declared sup");
      const double u = rng.uniform();
      if (u * lambda < static_cast<double>(n) * f1x) {
        const double mark = spec.nu.sample(rng);
        const double xm = x;
        x = xm + mark / sqrt_n - xm / static_cast<double>(n);
        y = y + mark / sqrt_n;
        recorder(t, x, y, Event::Spike1, mark, true);
      } else {
        const double f2y = spec.f2(y);
        if (f2y > spec.f2.sup)
          throw std::runtime_error("thinning bound violated: f2(y) exceeds declared sup");
        if (u * lambda < static_cast<double>(n) * f1x + f2y) {
          y = 0.0;
          recorder(t, x, y, Event::Reset2, 0.0, false);
        } else if (record_rejected) {
          recorder(t, x, y, Event::Rejected, 0.0, false);
        }
      }
    }
    return {x, y};
  }
};

}  // namespace

Trajectory simulate_finite_stream(const ModelSpec& spec, std::int64_t n_particles,
                                  double x0, double y0, double t_end, Rng& rng,
                                  const FiniteSimOptions& options) {
  for (std::size_t i = 0; i + 1 < options.sampling_grid.size(); ++i)
    if (options.sampling_grid[i] > options.sampling_grid[i + 1])
      throw std::invalid_argument("sampling_grid must be sorted");
  FiniteCore core(spec, n_particles, t_end);
  Trajectory traj;
  core.run(x0, y0, rng, options.sampling_grid, options.record_rejected,
           [&](double t, double x, double y, Event e, double mark, bool has_mark) {
             TrajectoryRecord rec{t, x, y, e, {}, {}};
             if (has_mark) rec.mark = mark;
             traj.records.push_back(rec);
           });
  return traj;
}

Trajectory simulate_finite(const ModelSpec& spec, std::int64_t n_particles, double x0,
                           double y0, double t_end, std::uint64_t seed,
                           const FiniteSimOptions& options) {
  require_valid(spec);
  Rng rng(seed);
  return simulate_finite_stream(spec, n_particles, x0, y0, t_end, rng, options);
}

std::pair<double, double> terminal_sample(const ModelSpec& spec, std::int64_t n_particles,
                                          double x0, double y0, double t, Rng& rng) {
  FiniteCore core(spec, n_particles, t);
  std::pair<double, double> out{x0, y0};
  const std::vector<double> grid{t};
  core.run(x0, y0, rng, grid, false,
           [&](double, double x, double y, Event e, double, bool) {
             if (e == Event::Grid) out = {x, y};
           });
  return out;
}

std::pair<double, double> terminal_sample(const ModelSpec& spec, std::int64_t n_particles,
                                          double x0, double y0, double t,
                                          std::uint64_t seed) {
  require_valid(spec);
  Rng rng(seed);
  return terminal_sample(spec, n_particles, x0, y0, t, rng);
}

}  // namespace meanfield
