#include <doctest.h>

#include <cmath>

#include "meanfield/finite_system.hpp"
#include "meanfield/parallel.hpp"

using namespace meanfield;

namespace {

ModelSpec decay_only_spec() {
  ModelSpec spec = figure1_spec();
  spec.f1 = RateFunction::constant(0.0);
  spec.f2 = RateFunction::constant(0.0);
  return spec;
}

}  // namespace

TEST_CASE("pure decay with zero rates") {
  auto spec = decay_only_spec();
  FiniteSimOptions opt;
  opt.sampling_grid = {1.0};
  const auto traj = simulate_finite(spec, 1, 1.0, 0.0, 1.0, 7, opt);
  REQUIRE(traj.records.size() == 1);
  CHECK(traj.records[0].x == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(traj.records[0].event == Event::Grid);
}

TEST_CASE("terminal sample halves under decay over ln 2") {
  const auto spec = decay_only_spec();
  const auto [x, y] = terminal_sample(spec, 5, 2.0, 3.0, std::log(2.0), 42);
  CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(y == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("determinism: identical inputs give identical trajectories") {
  const auto spec = figure1_spec();
  FiniteSimOptions opt;
  opt.sampling_grid = {0.5, 1.0};
  const auto a = simulate_finite(spec, 20, 0.0, 0.0, 1.0, 123, opt);
  const auto b = simulate_finite(spec, 20, 0.0, 0.0, 1.0, 123, opt);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].t == b.records[i].t);
    CHECK(a.records[i].x == b.records[i].x);
    CHECK(a.records[i].y == b.records[i].y);
  }
  const auto [xa, ya] = terminal_sample(spec, 20, 0.0, 0.0, 1.0, 123);
  // matches the last grid record of the grid={t} run bit-for-bit
  FiniteSimOptions single;
  single.sampling_grid = {1.0};
  const auto traj = simulate_finite(spec, 20, 0.0, 0.0, 1.0, 123, single);
  CHECK(xa == traj.back().x);
  CHECK(ya == traj.back().y);
}

TEST_CASE("jump arithmetic and resets reconstruct bit-exactly") {
  const auto spec = figure1_spec();
  FiniteSimOptions opt;
  opt.record_rejected = true;
  const std::int64_t n = 30;
  const auto traj = simulate_finite(spec, n, 0.3, -0.2, 2.0, 2024, opt);
  REQUIRE(!traj.records.empty());
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  double t = 0.0, x = 0.3, y = -0.2;
  bool saw_spike = false, saw_reset = false;
  for (const auto& rec : traj.records) {
    x *= std::exp(-spec.alpha1 * (rec.t - t));
    y *= std::exp(-spec.alpha2 * (rec.t - t));
    t = rec.t;
    if (rec.event == Event::Spike1) {
      REQUIRE(rec.mark.has_value());
      const double u = *rec.mark;
      const double xm = x;
      x = xm + u / sqrt_n - xm / static_cast<double>(n);
      y = y + u / sqrt_n;
      saw_spike = true;
    } else if (rec.event == Event::Reset2) {
      y = 0.0;
      CHECK(rec.y == 0.0);
      saw_reset = true;
    }
    CHECK(rec.x == x);
    CHECK(rec.y == y);
  }
  CHECK(saw_spike);
  CHECK(saw_reset);
}

TEST_CASE("constant f1 gives Poisson(N lambda t) spike counts") {
  ModelSpec spec = decay_only_spec();
  spec.f1 = RateFunction::constant(1.5);
  const std::int64_t n = 10;
  const double t = 1.0;
  const double expected = n * 1.5 * t;
  const std::size_t reps = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    Rng stream(replica_seed(5150, r));
    const auto traj = simulate_finite_stream(spec, n, 0.0, 0.0, t, stream, {});
    std::size_t count = 0;
    for (const auto& rec : traj.records)
      if (rec.event == Event::Spike1) ++count;
    sum += count;
    sumsq += static_cast<double>(count) * count;
  }
  const double mean = sum / reps;
  const double var = sumsq / reps - mean * mean;
  const double se = std::sqrt(var / reps);
  CHECK(std::abs(mean - expected) < 5.0 * se);
  // Poisson: variance should be close to the mean as well
  CHECK(var == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("first reset time is exponential when f2 is constant") {
  ModelSpec spec = decay_only_spec();
  spec.f2 = RateFunction::constant(0.8);
  const double t = 1.0;
  const double p_no_reset = std::exp(-0.8 * t);
  const std::size_t reps = 10000;
  std::size_t survived = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    Rng stream(replica_seed(777, r));
    const auto [x, y] = terminal_sample(spec, 3, 0.0, 1.0, t, stream);
    (void)x;
    if (y == std::exp(-spec.alpha2 * t)) ++survived;
  }
  const double freq = static_cast<double>(survived) / reps;
  const double se = std::sqrt(p_no_reset * (1.0 - p_no_reset) / reps);
  CHECK(std::abs(freq - p_no_reset) < 5.0 * se);
}

TEST_CASE("thinning bound violation is a hard error") {
  ModelSpec spec = figure1_spec();
  // declared sup accepted at validation scale but violated at larger x
  spec.f1 = RateFunction::from_table({{-30.0, 0.1}, {30.0, 5.0}}, 5.0);
  spec.f1.sup = 1.0;  // lie about the bound
  Rng rng(1);
  CHECK_THROWS_AS(simulate_finite_stream(spec, 50, 25.0, 0.0, 1.0, rng, {}),
                  std::runtime_error);
}

TEST_CASE("figure-1 run: every reset record has y exactly 0") {
  const auto spec = figure1_spec();
  FiniteSimOptions opt;
  opt.sampling_grid = {2.0, 4.0, 6.0, 8.0, 10.0};
  const auto traj = simulate_finite(spec, 100, 0.0, 0.0, 10.0, 31415, opt);
  std::size_t resets = 0;
  for (const auto& rec : traj.records) {
    if (rec.event == Event::Reset2) {
      CHECK(rec.y == 0.0);
      ++resets;
    }
  }
  CHECK(resets > 0);
}
