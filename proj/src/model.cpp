#include "meanfield/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace meanfield {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Logistic s = 1 / (1 + exp(b (c - x))) and its chain-rule factors.
double logistic(double b, double c, double x) {
  return 1.0 / (1.0 + std::exp(b * (c - x)));
}

double table_eval(const std::vector<std::pair<double, double>>& knots, double x) {
  if (knots.empty()) return 0.0;
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  auto it = std::lower_bound(knots.begin(), knots.end(), x,
                             [](const auto& k, double v) { return k.first < v; });
  const auto& [x1, v1] = *it;
  const auto& [x0, v0] = *(it - 1);
  const double w = (x - x0) / (x1 - x0);
  return v0 + w * (v1 - v0);
}

}  // namespace

RateFunction RateFunction::sigmoid(double a, double b, double c, double declared_sup) {
  RateFunction f;
  f.kind = RateKind::Sigmoid;
  f.a = a;
  f.b = b;
  f.c = c;
  f.sup = declared_sup;
  return f;
}

RateFunction RateFunction::constant(double level) {
  RateFunction f;
  f.kind = RateKind::Constant;
  f.a = level;
  f.sup = level;
  return f;
}

RateFunction RateFunction::from_table(std::vector<std::pair<double, double>> knots,
                                      double declared_sup) {
  RateFunction f;
  f.kind = RateKind::Table;
  std::sort(knots.begin(), knots.end());
  f.table = std::move(knots);
  f.sup = declared_sup;
  return f;
}

double RateFunction::derivative(double x, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("rate derivative order must be 0..3");
  switch (kind) {
    case RateKind::Constant:
      return order == 0 ? a : 0.0;
    case RateKind::Sigmoid: {
      const double s = logistic(b, c, x);
      const double sp = s * (1.0 - s);
      switch (order) {
        case 0: return a * s;
        case 1: return a * b * sp;
        case 2: return a * b * b * sp * (1.0 - 2.0 * s);
        default: return a * b * b * b * sp * (1.0 - 6.0 * s + 6.0 * s * s);
      }
    }
    case RateKind::Table:
      if (order == 0) return table_eval(table, x);
      throw std::invalid_argument("table rate functions support order 0 only");
  }
  throw std::logic_error("unreachable");
}

double RateFunction::sqrt_derivative(double x) const {
  switch (kind) {
    case RateKind::Constant:
      return 0.0;
    case RateKind::Sigmoid: {
      // (sqrt f)' = f' / (2 sqrt f) = (b/2) sqrt(a s) (1 - s), finite for all x.
      const double s = logistic(b, c, x);
      return 0.5 * b * std::sqrt(a * s) * (1.0 - s);
    }
    case RateKind::Table:
      throw std::invalid_argument("table rate functions have no analytic sqrt derivative");
  }
  throw std::logic_error("unreachable");
}

JumpLaw JumpLaw::gaussian(double scale) { return {JumpKind::Gaussian, scale}; }
JumpLaw JumpLaw::rademacher(double scale) { return {JumpKind::Rademacher, scale}; }
JumpLaw JumpLaw::centered_uniform(double scale) { return {JumpKind::CenteredUniform, scale}; }

double JumpLaw::variance() const {
  switch (kind) {
    case JumpKind::Gaussian: return scale * scale;
    case JumpKind::Rademacher: return scale * scale;
    case JumpKind::CenteredUniform: return scale * scale / 3.0;
  }
  throw std::logic_error("unreachable");
}

double JumpLaw::third_abs_moment() const {
  switch (kind) {
    case JumpKind::Gaussian: return scale * scale * scale * 2.0 * std::sqrt(2.0 / kPi);
    case JumpKind::Rademacher: return scale * scale * scale;
    case JumpKind::CenteredUniform: return scale * scale * scale / 4.0;
  }
  throw std::logic_error("unreachable");
}

double JumpLaw::sample(Rng& rng) const {
  switch (kind) {
    case JumpKind::Gaussian: return scale * rng.normal();
    case JumpKind::Rademacher: return rng.uniform() < 0.5 ? scale : -scale;
    case JumpKind::CenteredUniform: return scale * (2.0 * rng.uniform() - 1.0);
  }
  throw std::logic_error("unreachable");
}

double ModelSpec::sigma() const { return std::sqrt(nu.variance()); }

ModelSpec figure1_spec() {
  ModelSpec spec;
  spec.alpha1 = 1.0;
  spec.alpha2 = 1.0;
  spec.f1 = RateFunction::sigmoid(4.0, 2.0, 1.0, 4.0);
  spec.f2 = RateFunction::sigmoid(4.0, 2.0, 1.0, 4.0);
  spec.nu = JumpLaw::gaussian(1.0);
  return spec;
}

void ValidationReport::add(std::string name, bool ok, std::string detail, bool required) {
  if (!ok) pass = false;
  checks.push_back({std::move(name), ok, std::move(detail), required});
}

bool ValidationReport::simulation_safe() const {
  for (const auto& c : checks)
    if (c.required_for_simulation && !c.pass) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (pass ? "overall: pass" : "overall: FAIL") << "\n";
  return os.str();
}

namespace {

std::vector<double> validation_grid() {
  std::vector<double> xs(1001);
  for (int i = 0; i <= 1000; ++i) xs[i] = -20.0 + 40.0 * i / 1000.0;
  return xs;
}

// Central finite differences of f.derivative(., 0); Richardson-extrapolated
// for order 3 to keep the truncation error below the check tolerance.
double fd_derivative(const RateFunction& f, double x, int order) {
  auto g = [&](double u) { return f.derivative(u, 0); };
  switch (order) {
    case 1: {
      const double h = 1e-5;
      return (g(x + h) - g(x - h)) / (2.0 * h);
    }
    case 2: {
      const double h = 1e-4;
      return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
    }
    default: {
      auto d3 = [&](double h) {
        return (g(x + 2 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2 * h)) /
               (2.0 * h * h * h);
      };
      const double h = 1e-2;
      return (4.0 * d3(h) - d3(2.0 * h)) / 3.0;
    }
  }
}

void check_rate(ValidationReport& rep, const RateFunction& f, const std::string& tag,
                bool strictly_positive) {
  const auto grid = validation_grid();
  bool nonneg_ok = true, positive_ok = true, sup_ok = true;
  double grid_max = 0.0;
  for (double x : grid) {
    const double v = f(x);
    if (!(v >= 0.0)) nonneg_ok = false;
    if (!(v > 0.0)) positive_ok = false;
    if (v > f.sup) sup_ok = false;
    grid_max = std::max(grid_max, v);
  }
  rep.add(tag + " non-negative on grid", nonneg_ok);
  if (strictly_positive)
    rep.add(tag + " positive on grid", positive_ok, "", /*required=*/false);
  {
    std::ostringstream d;
    d << "grid max " << grid_max << " vs declared sup " << f.sup;
    rep.add(tag + " declared sup holds on grid", sup_ok, d.str());
  }
  if (f.differentiable()) {
    for (int order = 1; order <= 3; ++order) {
      double scale = 1.0;
      for (double x : grid) scale = std::max(scale, std::abs(f.derivative(x, order)));
      bool ok = true;
      double worst = 0.0;
      for (double x : grid) {
        const double diff = std::abs(f.derivative(x, order) - fd_derivative(f, x, order));
        worst = std::max(worst, diff / scale);
        if (diff > 1e-5 * scale) ok = false;
      }
      std::ostringstream d;
      d << "order " << order << ", worst scaled diff " << worst;
      rep.add(tag + " derivative matches finite differences", ok, d.str());
    }
  }
}

}  // namespace

ValidationReport validate_model(const ModelSpec& spec) {
  ValidationReport rep;
  rep.add("alpha1 > 0", spec.alpha1 > 0.0);
  rep.add("alpha2 > 0", spec.alpha2 > 0.0);
  check_rate(rep, spec.f1, "f1", /*strictly_positive=*/true);
  check_rate(rep, spec.f2, "f2", /*strictly_positive=*/false);
  rep.add("f1 declared sup > 0", spec.f1.sup > 0.0, "", /*required=*/false);

  // Decay of f1' on x >= 0 (the assumption is stated for x >= 0 only; the
  // fitted constant is reported, not pass/failed beyond finiteness).
  if (spec.f1.differentiable()) {
    double cfit = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.04)
      cfit = std::max(cfit, std::abs(spec.f1.derivative(x, 1)) * (1.0 + x));
    std::ostringstream d;
    d << "fitted C = " << cfit << " on x in [0,20]";
    rep.add("f1' decay constant finite (x >= 0)", std::isfinite(cfit), d.str(),
            /*required=*/false);
  }

  // Jump-law moments: compare the family formulas against independent
  // numerical integration of the density (exact sum for rademacher).
  {
    double mean = 0.0, var = 0.0, m3 = 0.0;
    if (spec.nu.kind == JumpKind::Rademacher) {
      mean = 0.0;
      var = spec.nu.scale * spec.nu.scale;
      m3 = std::abs(spec.nu.scale * spec.nu.scale * spec.nu.scale);
    } else {
      const double lo = spec.nu.kind == JumpKind::Gaussian ? -10.0 * spec.nu.scale
                                                           : -spec.nu.scale;
      const double hi = -lo;
      const int n = 40000;  // Simpson, even count
      const double h = (hi - lo) / n;
      auto density = [&](double u) {
        if (spec.nu.kind == JumpKind::Gaussian) {
          const double s = spec.nu.scale;
          return std::exp(-u * u / (2.0 * s * s)) / (s * std::sqrt(2.0 * kPi));
        }
        return 1.0 / (2.0 * spec.nu.scale);
      };
      for (int i = 0; i <= n; ++i) {
        const double u = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double p = w * density(u) * h / 3.0;
        mean += p * u;
        var += p * u * u;
        m3 += p * std::abs(u * u * u);
      }
    }
    const bool ok = std::abs(mean) < 1e-9 &&
                    std::abs(var - spec.nu.variance()) < 1e-6 * (1.0 + var) &&
                    std::abs(m3 - spec.nu.third_abs_moment()) < 1e-6 * (1.0 + m3);
    std::ostringstream d;
    d << "quadrature (mean, var, m3) = (" << mean << ", " << var << ", " << m3 << ")";
    rep.add("nu moment formulas consistent", ok, d.str());
  }
  return rep;
}

void require_valid(const ModelSpec& spec) {
  const auto rep = validate_model(spec);
  if (!rep.simulation_safe()) {
    std::string msg = "model validation failed:\n" + rep.summary();
    throw std::invalid_argument(msg);
  }
}

namespace {

RateFunction rate_from_keys(std::map<std::string, std::string>& kv, const std::string& prefix) {
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(prefix + "." + key);
    if (it == kv.end())
      throw std::invalid_argument("missing config key: " + prefix + "." + key);
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_num = [&](const std::string& key) { return std::stod(take(key)); };
  const std::string kind = take("kind");
  if (kind == "sigmoid") {
    const double a = take_num("a");
    const double b = take_num("b");
    const double c = take_num("c");
    const double sup = take_num("sup");
    return RateFunction::sigmoid(a, b, c, sup);
  }
  if (kind == "constant") {
    const double a = take_num("a");
    RateFunction f = RateFunction::constant(a);
    if (auto it = kv.find(prefix + ".sup"); it != kv.end()) {
      f.sup = std::stod(it->second);
      kv.erase(it);
    }
    return f;
  }
  throw std::invalid_argument("unknown rate kind for " + prefix + ": " + kind);
}

}  // namespace

ModelSpec parse_model_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto is_space = [](unsigned char ch) { return std::isspace(ch); };
    line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), is_space));
    line.erase(std::find_if_not(line.rbegin(), line.rend(), is_space).base(), line.end());
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(std::find_if_not(key.rbegin(), key.rend(), is_space).base(), key.end());
    val.erase(val.begin(), std::find_if_not(val.begin(), val.end(), is_space));
    if (kv.count(key)) throw std::invalid_argument("duplicate config key: " + key);
    kv[key] = val;
  }

  ModelSpec spec;
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("missing config key: " + key);
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  spec.alpha1 = std::stod(take("alpha1"));
  spec.alpha2 = std::stod(take("alpha2"));
  spec.f1 = rate_from_keys(kv, "f1");
  spec.f2 = rate_from_keys(kv, "f2");
  const std::string nk = take("nu.kind");
  const double scale = std::stod(take("nu.scale"));
  if (nk == "gaussian") {
    spec.nu = JumpLaw::gaussian(scale);
  } else if (nk == "rademacher") {
    spec.nu = JumpLaw::rademacher(scale);
  } else if (nk == "uniform" || nk == "centered-uniform") {
    spec.nu = JumpLaw::centered_uniform(scale);
  } else {
    throw std::invalid_argument("unknown nu.kind: " + nk);
  }
  if (!kv.empty()) throw std::invalid_argument("unknown config key: " + kv.begin()->first);
  return spec;
}

ModelSpec load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_config(buf.str());
}

}  // namespace meanfield
