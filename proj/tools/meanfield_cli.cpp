#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meanfield/estimation.hpp"
#include "meanfield/finite_system.hpp"
#include "meanfield/generators.hpp"
#include "meanfield/limit_process.hpp"
#include "meanfield/model.hpp"
#include "meanfield/svg.hpp"
#include "meanfield/test_functions.hpp"
#include "meanfield/trajectory.hpp"

namespace mf = meanfield;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 12345;
  std::size_t reps = 10000;
  std::int64_t n = 100;
  std::vector<std::int64_t> n_list;
  double t = 1.0;
  double dt = 0.0;  // 0 = default_dt(t)
  std::string out_dir = ".";
  unsigned workers = 1;
  bool svg = false;
  double x0 = 0.0;
  double y0 = 0.0;
  std::string g_name = "tanh_y";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "model config file");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--reps", o.reps, "Monte Carlo replicas");
  cmd->add_option("--n", o.n, "number of layer-1 particles N");
  cmd->add_option("--n-list", o.n_list, "comma-separated N values")->delimiter(',');
  cmd->add_option("--t", o.t, "time horizon");
  cmd->add_option("--dt", o.dt, "Euler step (0 = default)");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--workers", o.workers, "worker thread count");
  cmd->add_flag("--svg", o.svg, "also write an SVG plot");
  cmd->add_option("--x0", o.x0, "initial x");
  cmd->add_option("--y0", o.y0, "initial y");
  cmd->add_option("--g", o.g_name, "bounded-smooth test function name");
}

mf::ModelSpec load_spec(const CommonOpts& o) {
  if (o.config_path.empty()) return mf::figure1_spec();
  return mf::load_model_config(o.config_path);
}

double effective_dt(const CommonOpts& o) {
  return o.dt > 0.0 ? o.dt : mf::default_dt(o.t);
}

fs::path out_file(const CommonOpts& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + p.string());
  return out;
}

std::vector<double> uniform_grid(double t, double step) {
  std::vector<double> g;
  for (double u = 0.0; u < t; u += step) g.push_back(u);
  g.push_back(t);
  return g;
}

int cmd_validate(const CommonOpts& o) {
  const mf::ModelSpec spec = load_spec(o);
  const auto rep = mf::validate_model(spec);
  std::cout << rep.summary();
  return rep.pass ? 0 : 1;
}

int cmd_simulate(const CommonOpts& o, const std::string& system, double grid_dt) {
  const mf::ModelSpec spec = load_spec(o);
  const auto grid = uniform_grid(o.t, grid_dt > 0.0 ? grid_dt : o.t / 200.0);
  mf::Trajectory traj;
  std::string stem;
  if (system == "finite") {
    mf::FiniteSimOptions opt;
    opt.sampling_grid = grid;
    traj = mf::simulate_finite(spec, o.n, o.x0, o.y0, o.t, o.seed, opt);
    stem = "trajectory_finite_N" + std::to_string(o.n);
  } else if (system == "limit") {
    mf::LimitSimOptions opt;
    opt.sampling_grid = grid;
    traj = mf::simulate_limit(spec, o.x0, o.y0, o.t, effective_dt(o), o.seed, opt);
    stem = "trajectory_limit";
  } else if (system == "aux") {
    mf::LimitSimOptions opt;
    opt.sampling_grid = grid;
    const auto path =
        mf::simulate_auxiliary(spec, o.x0, o.y0, o.t, effective_dt(o), o.seed, opt);
    traj = path.trajectory;
    stem = "trajectory_aux";
  } else {
    throw std::invalid_argument("unknown system: " + system);
  }
  const auto csv = out_file(o, stem + ".csv");
  mf::write_trajectory_csv(csv.string(), traj);
  std::cout << "wrote " << csv.string() << "\n";
  if (o.svg) {
    mf::SvgSeries sy{"y(t)", "black", {}, {}};
    mf::SvgSeries resets{"resets", "blue", {}, {}};
    for (const auto& r : traj.records) {
      if (r.event == mf::Event::Grid) sy.line.push_back({r.t, r.y});
      if (r.event == mf::Event::Reset2) resets.points.push_back({r.t, 0.0});
    }
    const auto svg = out_file(o, stem + ".svg");
    mf::write_svg_plot(svg.string(), {sy, resets}, stem, "t", "y");
    std::cout << "wrote " << svg.string() << "\n";
  }
  return 0;
}

int cmd_reproduce_fig1(const CommonOpts& o) {
  mf::ModelSpec spec = mf::figure1_spec();
  std::vector<std::int64_t> ns = o.n_list.empty() ? std::vector<std::int64_t>{100, 1000}
                                                  : o.n_list;
  const double t_end = 10.0;
  const auto grid = uniform_grid(t_end, 0.01);
  std::vector<mf::SvgSeries> series;
  const std::vector<std::string> colors{"black", "red", "green", "orange"};
  for (std::size_t i = 0; i < ns.size(); ++i) {
    mf::FiniteSimOptions opt;
    opt.sampling_grid = grid;
    const auto traj = mf::simulate_finite(spec, ns[i], 0.0, 0.0, t_end,
                                          mf::splitmix64(o.seed + i), opt);
    const auto csv = out_file(o, "fig1_N" + std::to_string(ns[i]) + ".csv");
    mf::write_trajectory_csv(csv.string(), traj);
    std::cout << "wrote " << csv.string() << "\n";
    mf::SvgSeries sy{"Y^N, N=" + std::to_string(ns[i]), colors[i % colors.size()], {}, {}};
    mf::SvgSeries resets{"", colors[i % colors.size()], {}, {}};
    for (const auto& r : traj.records) {
      if (r.event == mf::Event::Grid) sy.line.push_back({r.t, r.y});
      if (r.event == mf::Event::Reset2) resets.points.push_back({r.t, 0.0});
    }
    series.push_back(std::move(sy));
    series.push_back(std::move(resets));
  }
  const auto svg = out_file(o, "fig1.svg");
  mf::write_svg_plot(svg.string(), series, "Layer-2 potential trajectories", "t", "Y^N_t");
  std::cout << "wrote " << svg.string() << "\n";
  return 0;
}

int cmd_rate_study(const CommonOpts& o) {
  const mf::ModelSpec spec = load_spec(o);
  const auto g = mf::bounded_smooth_by_name(o.g_name);
  std::vector<std::int64_t> ns = o.n_list;
  if (ns.empty()) ns = {16, 32, 64, 128, 256, 512, 1024};
  mf::ConvergenceStudyOptions opt;
  opt.workers = o.workers;
  const auto fn = [&](double x, double y) { return (*g)(x, y); };
  const auto rep = mf::convergence_study(spec, fn, o.x0, o.y0, o.t, ns, o.reps,
                                         effective_dt(o), o.seed, opt);
  auto out = open_out(out_file(o, "rate_study.csv"));
  out << "N,mean_N,stderr_N,mean_limit,stderr_limit,error,combined_stderr,noise_dominated\n";
  for (const auto& p : rep.points) {
    out << p.n << ',' << mf::format_double(p.mean_n) << ',' << mf::format_double(p.stderr_n)
        << ',' << mf::format_double(rep.mean_limit) << ','
        << mf::format_double(rep.stderr_limit) << ',' << mf::format_double(p.error) << ','
        << mf::format_double(p.combined_stderr) << ','
        << (p.noise_dominated ? "true" : "false") << "\n";
  }
  out << "slope,slope_ci_lo,slope_ci_hi,points_used\n";
  out << mf::format_double(rep.slope) << ',' << mf::format_double(rep.slope_ci_lo) << ','
      << mf::format_double(rep.slope_ci_hi) << ',' << rep.points_used << "\n";
  if (!rep.conclusive) {
    std::cout << "inconclusive: noise-dominated (" << rep.points_used
              << " usable points)\n";
    return 3;
  }
  std::cout << "slope " << mf::format_double(rep.slope) << "  95% CI ["
            << mf::format_double(rep.slope_ci_lo) << ", "
            << mf::format_double(rep.slope_ci_hi) << "]  points " << rep.points_used
            << "\n";
  return 0;
}

int cmd_generator_check(const CommonOpts& o) {
  const mf::ModelSpec spec = load_spec(o);
  const auto g = mf::bounded_smooth_by_name(o.g_name);
  auto out = open_out(out_file(o, "generator_check.csv"));
  out << "x,y,N,AN,Abar,gap,bound,ok\n";
  bool all_ok = true;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double x = -3.0 + 6.0 * i / 20.0;
      const double y = -3.0 + 6.0 * j / 20.0;
      const auto rep = mf::generator_report(spec, o.n, *g, x, y);
      all_ok = all_ok && rep.bound_satisfied;
      out << mf::format_double(x) << ',' << mf::format_double(y) << ',' << rep.n << ','
          << mf::format_double(rep.value_AN) << ',' << mf::format_double(rep.value_Abar)
          << ',' << mf::format_double(rep.gap) << ',' << mf::format_double(rep.bound) << ','
          << (rep.bound_satisfied ? "true" : "false") << "\n";
    }
  }
  std::cout << (all_ok ? "all points within bound\n" : "BOUND VIOLATION found\n");
  return 0;
}

int cmd_girsanov_check(const CommonOpts& o) {
  const mf::ModelSpec spec = load_spec(o);
  const auto g = mf::bounded_smooth_by_name(o.g_name);
  const auto fn = [&](double x, double y) { return (*g)(x, y); };
  const double dt = effective_dt(o);
  const auto direct = mf::estimate_semigroup_limit(spec, fn, o.x0, o.y0, o.t, o.reps, dt,
                                                   mf::splitmix64(o.seed), o.workers);
  const auto weighted = mf::girsanov_estimate(spec, fn, o.x0, o.y0, o.t, dt, o.reps,
                                              mf::splitmix64(o.seed + 1), o.workers);
  auto out = open_out(out_file(o, "girsanov_check.csv"));
  out << "method,mean,stderr,reps\n";
  out << "direct," << mf::format_double(direct.mean) << ','
      << mf::format_double(direct.stderr_) << ',' << direct.reps << "\n";
  out << "girsanov," << mf::format_double(weighted.mean) << ','
      << mf::format_double(weighted.stderr_) << ',' << weighted.reps << "\n";
  const double diff = std::abs(direct.mean - weighted.mean);
  const double comb =
      std::sqrt(direct.stderr_ * direct.stderr_ + weighted.stderr_ * weighted.stderr_);
  out << "abs_diff," << mf::format_double(diff) << ',' << mf::format_double(comb) << ",\n";
  std::cout << "direct " << direct.mean << " +- " << direct.stderr_ << ", girsanov "
            << weighted.mean << " +- " << weighted.stderr_ << " (|diff| = " << diff
            << ", combined stderr = " << comb << ")\n";
  return 0;
}

int cmd_moment_check(const CommonOpts& o) {
  const mf::ModelSpec spec = load_spec(o);
  std::vector<std::int64_t> ns = o.n_list.empty() ? std::vector<std::int64_t>{10, 100}
                                                  : o.n_list;
  auto out = open_out(out_file(o, "moment_check.csv"));
  out << "N,estimate,stderr,bound,pass\n";
  bool all_pass = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto rep = mf::moment_check(spec, ns[i], o.x0, o.t, o.reps,
                                      mf::splitmix64(o.seed + i), o.workers);
    all_pass = all_pass && rep.pass;
    out << ns[i] << ',' << mf::format_double(rep.estimate) << ','
        << mf::format_double(rep.stderr_) << ',' << mf::format_double(rep.bound) << ','
        << (rep.pass ? "true" : "false") << "\n";
  }
  std::cout << (all_pass ? "moment bound holds\n" : "moment bound EXCEEDED\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer mean-field neural model: simulation and verification"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string system = "finite";
  double grid_dt = 0.0;

  auto* validate = app.add_subcommand("validate", "check a model config");
  add_common(validate, o);
  auto* simulate = app.add_subcommand("simulate", "write one trajectory CSV");
  add_common(simulate, o);
  simulate->add_option("--system", system, "finite | limit | aux");
  simulate->add_option("--grid-dt", grid_dt, "sampling grid step");
  auto* fig1 = app.add_subcommand("reproduce-fig1", "trajectories at N=100 and N=1000");
  add_common(fig1, o);
  auto* rate = app.add_subcommand("rate-study", "empirical semigroup convergence rate");
  add_common(rate, o);
  auto* genchk = app.add_subcommand("generator-check", "generator gap vs analytic bound");
  add_common(genchk, o);
  auto* girsanov = app.add_subcommand("girsanov-check", "reweighted vs direct estimate");
  add_common(girsanov, o);
  auto* moment = app.add_subcommand("moment-check", "second-moment a priori bound");
  add_common(moment, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (simulate->parsed()) return cmd_simulate(o, system, grid_dt);
    if (fig1->parsed()) return cmd_reproduce_fig1(o);
    if (rate->parsed()) return cmd_rate_study(o);
    if (genchk->parsed()) return cmd_generator_check(o);
    if (girsanov->parsed()) return cmd_girsanov_check(o);
    if (moment->parsed()) return cmd_moment_check(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
