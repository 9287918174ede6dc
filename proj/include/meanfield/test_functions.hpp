#ifndef MEANFIELD_TEST_FUNCTIONS_HPP_
#define MEANFIELD_TEST_FUNCTIONS_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace meanfield {

// Test function g(x, y) with partial derivatives to total order 3. The
// bounded-smooth families additionally carry analytic sup norms per
// multi-index, which the generator gap bound and the rate study rely on.
class TestFunction {
 public:
  virtual ~TestFunction() = default;

  virtual std::string name() const = 0;
  // Partial derivative of order (bx, by), bx + by <= 3; (0, 0) is g itself.
  virtual double deriv(int bx, int by, double x, double y) const = 0;
  virtual bool has_sup_norms() const = 0;
  // ||d_beta g||_inf; throws when not carried.
  virtual double sup_norm(int bx, int by) const;

  double operator()(double x, double y) const { return deriv(0, 0, x, y); }
  // sum over |beta| = order of ||d_beta g||_inf
  double norm_order_sum(int order) const;
  // ||g||_{n,inf} = sum over |beta| <= n
  double norm_upto(int n) const;
};

using TestFunctionPtr = std::shared_ptr<const TestFunction>;

// Polynomial in (x, y) of total degree <= 3; coeffs[i][j] multiplies x^i y^j.
// Sup norms are taken over a declared box, on a dense grid (admitted for
// algebraic checks, not for the rate study, which needs globally bounded g).
TestFunctionPtr make_polynomial(const std::array<std::array<double, 4>, 4>& coeffs,
                                std::string name, double box_halfwidth = 0.0);
TestFunctionPtr make_monomial_x();   // g = x
TestFunctionPtr make_monomial_y();   // g = y
TestFunctionPtr make_constant_one(); // g = 1
TestFunctionPtr make_x_squared(double box_halfwidth = 10.0);

// tanh(a x + b y + c)
TestFunctionPtr make_tanh_linear(double a, double b, double c, std::string name = "");
// exp(-((x-cx)^2 + (y-cy)^2) / (2 s^2))
TestFunctionPtr make_gauss_bump(double cx, double cy, double s, std::string name = "");
TestFunctionPtr make_sum(TestFunctionPtr f, TestFunctionPtr g, std::string name = "");
TestFunctionPtr make_product(TestFunctionPtr f, TestFunctionPtr g, std::string name = "");

// The bounded-smooth functions the artifact ships for grid checks and the
// rate study; includes tanh(y), tanh(x), a gaussian bump, a sum and a product.
std::vector<TestFunctionPtr> shipped_bounded_smooth();
// Lookup by name ("tanh_y", "tanh_x", "gauss", ...); throws on unknown names.
TestFunctionPtr bounded_smooth_by_name(const std::string& name);

}  // namespace meanfield

#endif  // MEANFIELD_TEST_FUNCTIONS_HPP_
