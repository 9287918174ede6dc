#ifndef MEANFIELD_QUADRATURE_HPP_
#define MEANFIELD_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "meanfield/model.hpp"

namespace meanfield {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Hermite rule for integrals against exp(-x^2) dx.
QuadRule gauss_hermite(int n);
// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

// E_nu[h(U)]: exact two-point sum for rademacher, 64-node Gauss-Hermite for
// gaussian, 64-node Gauss-Legendre for centered-uniform. The node count is
// overridable for convergence checks.
double expect_under_jump_law(const JumpLaw& law, const std::function<double(double)>& h,
                             int nodes = 64);

}  // namespace meanfield

#endif  // MEANFIELD_QUADRATURE_HPP_
