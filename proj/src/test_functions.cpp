#include "meanfield/test_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace meanfield {

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Derivatives of tanh(z) and their sup norms over z.
double tanh_deriv(int order, double z) {
  const double t = std::tanh(z);
  const double s = 1.0 - t * t;
  switch (order) {
    case 0: return t;
    case 1: return s;
    case 2: return -2.0 * t * s;
    default: return s * (6.0 * t * t - 2.0);
  }
}

const double kTanhSup[4] = {1.0, 1.0, 4.0 * std::sqrt(3.0) / 9.0, 2.0};

// Derivatives of exp(-u^2/2) and their sup norms over u.
double gauss_deriv(int order, double u) {
  const double e = std::exp(-0.5 * u * u);
  switch (order) {
    case 0: return e;
    case 1: return -u * e;
    case 2: return (u * u - 1.0) * e;
    default: return (3.0 * u - u * u * u) * e;
  }
}

double gauss_sup3() {
  // extremum of |3u - u^3| e^{-u^2/2} at u^2 = 3 - sqrt(6)
  const double u2 = 3.0 - std::sqrt(6.0);
  const double u = std::sqrt(u2);
  return std::abs(3.0 * u - u * u2) * std::exp(-0.5 * u2);
}

const double kGaussSup[4] = {1.0, std::exp(-0.5), 1.0, gauss_sup3()};

class Polynomial final : public TestFunction {
 public:
  Polynomial(const std::array<std::array<double, 4>, 4>& coeffs, std::string name,
             double box)
      : coeffs_(coeffs), name_(std::move(name)), box_(box) {}

  std::string name() const override { return name_; }

  double deriv(int bx, int by, double x, double y) const override {
    double sum = 0.0;
    for (int i = bx; i <= 3; ++i) {
      for (int j = by; i + j <= 3; ++j) {
        if (coeffs_[i][j] == 0.0) continue;
        double term = coeffs_[i][j];
        for (int k = 0; k < bx; ++k) term *= (i - k);
        for (int k = 0; k < by; ++k) term *= (j - k);
        term *= std::pow(x, i - bx) * std::pow(y, j - by);
        sum += term;
      }
    }
    return sum;
  }

  bool has_sup_norms() const override { return box_ > 0.0; }

  double sup_norm(int bx, int by) const override {
    if (box_ <= 0.0) return TestFunction::sup_norm(bx, by);
    double best = 0.0;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double x = -box_ + 2.0 * box_ * i / n;
        const double y = -box_ + 2.0 * box_ * j / n;
        best = std::max(best, std::abs(deriv(bx, by, x, y)));
      }
    }
    return best;
  }

 private:
  std::array<std::array<double, 4>, 4> coeffs_;
  std::string name_;
  double box_;
};

class TanhLinear final : public TestFunction {
 public:
  TanhLinear(double a, double b, double c, std::string name)
      : a_(a), b_(b), c_(c), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  double deriv(int bx, int by, double x, double y) const override {
    const double z = a_ * x + b_ * y + c_;
    return std::pow(a_, bx) * std::pow(b_, by) * tanh_deriv(bx + by, z);
  }

  bool has_sup_norms() const override { return true; }

  double sup_norm(int bx, int by) const override {
    return std::pow(std::abs(a_), bx) * std::pow(std::abs(b_), by) * kTanhSup[bx + by];
  }

 private:
  double a_, b_, c_;
  std::string name_;
};

class GaussBump final : public TestFunction {
 public:
  GaussBump(double cx, double cy, double s, std::string name)
      : cx_(cx), cy_(cy), s_(s), name_(std::move(name)) {
    if (s <= 0.0) throw std::invalid_argument("gauss bump needs s > 0");
  }

  std::string name() const override { return name_; }

  double deriv(int bx, int by, double x, double y) const override {
    const double p = (x - cx_) / s_;
    const double q = (y - cy_) / s_;
    return gauss_deriv(bx, p) * gauss_deriv(by, q) / std::pow(s_, bx + by);
  }

  bool has_sup_norms() const override { return true; }

  double sup_norm(int bx, int by) const override {
    // separable in x and y, so the sup factorizes exactly
    return kGaussSup[bx] * kGaussSup[by] / std::pow(s_, bx + by);
  }

 private:
  double cx_, cy_, s_;
  std::string name_;
};

class Sum final : public TestFunction {
 public:
  Sum(TestFunctionPtr f, TestFunctionPtr g, std::string name)
      : f_(std::move(f)), g_(std::move(g)), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  double deriv(int bx, int by, double x, double y) const override {
    return f_->deriv(bx, by, x, y) + g_->deriv(bx, by, x, y);
  }

  bool has_sup_norms() const override {
    return f_->has_sup_norms() && g_->has_sup_norms();
  }

  double sup_norm(int bx, int by) const override {
    return f_->sup_norm(bx, by) + g_->sup_norm(bx, by);
  }

 private:
  TestFunctionPtr f_, g_;
  std::string name_;
};

class Product final : public TestFunction {
 public:
  Product(TestFunctionPtr f, TestFunctionPtr g, std::string name)
      : f_(std::move(f)), g_(std::move(g)), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  double deriv(int bx, int by, double x, double y) const override {
    // general Leibniz rule over both coordinates
    double sum = 0.0;
    for (int i = 0; i <= bx; ++i)
      for (int j = 0; j <= by; ++j)
        sum += binom(bx, i) * binom(by, j) * f_->deriv(i, j, x, y) *
               g_->deriv(bx - i, by - j, x, y);
    return sum;
  }

  bool has_sup_norms() const override {
    return f_->has_sup_norms() && g_->has_sup_norms();
  }

  double sup_norm(int bx, int by) const override {
    double sum = 0.0;
    for (int i = 0; i <= bx; ++i)
      for (int j = 0; j <= by; ++j)
        sum += binom(bx, i) * binom(by, j) * f_->sup_norm(i, j) *
               g_->sup_norm(bx - i, by - j);
    return sum;
  }

 private:
  TestFunctionPtr f_, g_;
  std::string name_;
};

}  // namespace

double TestFunction::sup_norm(int, int) const {
  throw std::invalid_argument("test function '" + name() + "' carries no sup norms");
}

double TestFunction::norm_order_sum(int order) const {
  double sum = 0.0;
  for (int bx = 0; bx <= order; ++bx) sum += sup_norm(bx, order - bx);
  return sum;
}

double TestFunction::norm_upto(int n) const {
  double sum = 0.0;
  for (int order = 0; order <= n; ++order) sum += norm_order_sum(order);
  return sum;
}

TestFunctionPtr make_polynomial(const std::array<std::array<double, 4>, 4>& coeffs,
                                std::string name, double box_halfwidth) {
  return std::make_shared<Polynomial>(coeffs, std::move(name), box_halfwidth);
}

TestFunctionPtr make_monomial_x() {
  std::array<std::array<double, 4>, 4> c{};
  c[1][0] = 1.0;
  return make_polynomial(c, "x");
}

TestFunctionPtr make_monomial_y() {
  std::array<std::array<double, 4>, 4> c{};
  c[0][1] = 1.0;
  return make_polynomial(c, "y");
}

TestFunctionPtr make_constant_one() {
  std::array<std::array<double, 4>, 4> c{};
  c[0][0] = 1.0;
  return make_polynomial(c, "1");
}

TestFunctionPtr make_x_squared(double box_halfwidth) {
  std::array<std::array<double, 4>, 4> c{};
  c[2][0] = 1.0;
  return make_polynomial(c, "x^2", box_halfwidth);
}

TestFunctionPtr make_tanh_linear(double a, double b, double c, std::string name) {
  if (name.empty())
    name = "tanh(" + std::to_string(a) + "x+" + std::to_string(b) + "y+" +
           std::to_string(c) + ")";
  return std::make_shared<TanhLinear>(a, b, c, std::move(name));
}

TestFunctionPtr make_gauss_bump(double cx, double cy, double s, std::string name) {
  if (name.empty()) name = "gauss_bump";
  return std::make_shared<GaussBump>(cx, cy, s, std::move(name));
}

TestFunctionPtr make_sum(TestFunctionPtr f, TestFunctionPtr g, std::string name) {
  if (name.empty()) name = f->name() + "+" + g->name();
  return std::make_shared<Sum>(std::move(f), std::move(g), std::move(name));
}

TestFunctionPtr make_product(TestFunctionPtr f, TestFunctionPtr g, std::string name) {
  if (name.empty()) name = f->name() + "*" + g->name();
  return std::make_shared<Product>(std::move(f), std::move(g), std::move(name));
}

std::vector<TestFunctionPtr> shipped_bounded_smooth() {
  static const std::vector<TestFunctionPtr> fns = [] {
    std::vector<TestFunctionPtr> v;
    v.push_back(make_tanh_linear(0.0, 1.0, 0.0, "tanh_y"));
    v.push_back(make_tanh_linear(1.0, 0.0, 0.0, "tanh_x"));
    v.push_back(make_tanh_linear(0.6, 0.8, -0.2, "tanh_xy"));
    v.push_back(make_gauss_bump(0.0, 0.0, 1.5, "gauss"));
    v.push_back(make_sum(make_tanh_linear(0.0, 1.0, 0.0, "tanh_y"),
                         make_gauss_bump(0.5, -0.5, 2.0, "gauss_off"), "tanh_y+gauss_off"));
    v.push_back(make_product(make_tanh_linear(1.0, 0.0, 0.0, "tanh_x"),
                             make_gauss_bump(0.0, 0.0, 2.0, "gauss_wide"),
                             "tanh_x*gauss_wide"));
    return v;
  }();
  return fns;
}

TestFunctionPtr bounded_smooth_by_name(const std::string& name) {
  for (const auto& f : shipped_bounded_smooth())
    if (f->name() == name) return f;
  throw std::invalid_argument("unknown bounded-smooth test function: " + name);
}

}  // namespace meanfield
