#ifndef MEANFIELD_FINITE_SYSTEM_HPP_
#define MEANFIELD_FINITE_SYSTEM_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "meanfield/model.hpp"
#include "meanfield/trajectory.hpp"

namespace meanfield {

struct FiniteSimOptions {
  std::vector<double> sampling_grid;  // sorted times in [0, t_end]
  bool record_rejected = false;
};

// Exact event-driven simulation of the finite-N pair (X^N, Y^N): closed-form
// exponential decay between events, candidate events from a homogeneous
// Poisson stream of rate N ||f1||_inf + ||f2||_inf, thinned into layer-1
// spikes (x += u/sqrt(N) - x/N, y += u/sqrt(N)) and layer-2 resets (y = 0).
// Bit-identical output for identical inputs.
Trajectory simulate_finite(const ModelSpec& spec, std::int64_t n_particles, double x0,
                           double y0, double t_end, std::uint64_t seed,
                           const FiniteSimOptions& options = {});

// Final state only; identical to the last grid record of simulate_finite with
// sampling_grid = {t}.
std::pair<double, double> terminal_sample(const ModelSpec& spec, std::int64_t n_particles,
                                          double x0, double y0, double t,
                                          std::uint64_t seed);

// Same path law driven by a caller-owned RNG stream, for replica loops.
std::pair<double, double> terminal_sample(const ModelSpec& spec, std::int64_t n_particles,
                                          double x0, double y0, double t, Rng& rng);

// Stream-driven trajectory for replica loops (no per-call validation).
Trajectory simulate_finite_stream(const ModelSpec& spec, std::int64_t n_particles,
                                  double x0, double y0, double t_end, Rng& rng,
                                  const FiniteSimOptions& options = {});

}  // namespace meanfield

#endif  // MEANFIELD_FINITE_SYSTEM_HPP_
