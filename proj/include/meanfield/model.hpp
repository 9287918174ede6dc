#ifndef MEANFIELD_MODEL_HPP_
#define MEANFIELD_MODEL_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meanfield/rng.hpp"

namespace meanfield {

enum class RateKind { Sigmoid, Constant, Table };

// Non-negative rate function with analytic derivatives (sigmoid/constant) and
// a declared sup bound used by the thinning samplers. Table kind is linear
// interpolation and supports order 0 only.
struct RateFunction {
  RateKind kind = RateKind::Constant;
  // sigmoid: a / (1 + exp(b * (c - x)))
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  // table: sorted (x, value) knots, clamped outside the range
  std::vector<std::pair<double, double>> table;
  double sup = 0.0;  // declared ||f||_inf

  static RateFunction sigmoid(double a, double b, double c, double declared_sup);
  static RateFunction constant(double level);
  static RateFunction from_table(std::vector<std::pair<double, double>> knots,
                                 double declared_sup);

  double operator()(double x) const { return derivative(x, 0); }
  // d^order f / dx^order, order in 0..3
  double derivative(double x, int order) const;
  // (sqrt f)'(x); requires an analytic kind
  double sqrt_derivative(double x) const;
  bool differentiable() const { return kind != RateKind::Table; }
};

enum class JumpKind { Gaussian, Rademacher, CenteredUniform };

// Centered jump mark law: nu, its variance sigma^2 and absolute third moment.
struct JumpLaw {
  JumpKind kind = JumpKind::Gaussian;
  double scale = 1.0;

  static JumpLaw gaussian(double scale);
  static JumpLaw rademacher(double scale);
  static JumpLaw centered_uniform(double scale);

  double variance() const;
  double third_abs_moment() const;
  double sample(Rng& rng) const;
};

struct ModelSpec {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  RateFunction f1;
  RateFunction f2;
  JumpLaw nu;

  double sigma() const;  // sqrt of nu variance
};

// Reference parameter set: alpha1 = alpha2 = 1, standard gaussian marks,
// f1 = f2 = 4 / (1 + exp(2 (1 - x))).
ModelSpec figure1_spec();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  // Assumption-level checks (e.g. strict positivity of f1) fail the report
  // but do not block simulation; degenerate rates like f1 == 0 are legal
  // simulator inputs and serve as analytic oracles.
  bool required_for_simulation = true;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass = true;

  void add(std::string name, bool ok, std::string detail = "", bool required = true);
  bool simulation_safe() const;
  std::string summary() const;
};

// Grid checks of the model assumptions: f1 > 0, f2 >= 0, declared sups hold
// on 1001 points over [-20, 20], analytic derivatives match central finite
// differences, and the jump-law moment formulas are consistent.
ValidationReport validate_model(const ModelSpec& spec);

// Throws std::invalid_argument when validation fails; simulators call this.
void require_valid(const ModelSpec& spec);

// Flat key-value model config (keys alpha1, alpha2, f1.*, f2.*, nu.*).
// Unknown keys are a hard error.
ModelSpec parse_model_config(const std::string& text);
ModelSpec load_model_config(const std::string& path);

}  // namespace meanfield

#endif  // MEANFIELD_MODEL_HPP_
