#include "meanfield/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace meanfield {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rules are deterministic in n; cache them, the hot paths request the same
// node count millions of times.
const QuadRule& cached_rule(int n, QuadRule (*make)(int), std::map<int, QuadRule>& cache,
                            std::mutex& mu) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make(n)).first;
  return it->second;
}

const QuadRule& cached_hermite(int n) {
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  return cached_rule(n, gauss_hermite, cache, mu);
}

const QuadRule& cached_legendre(int n) {
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  return cached_rule(n, gauss_legendre, cache, mu);
}

}  // namespace

// Newton iteration on the orthonormal Hermite recurrence (stable up to large
// n, unlike the raw polynomials which overflow).
QuadRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0 / std::pow(kPi, 0.25);
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

double expect_under_jump_law(const JumpLaw& law, const std::function<double(double)>& h,
                             int nodes) {
  switch (law.kind) {
    case JumpKind::Rademacher:
      return 0.5 * (h(law.scale) + h(-law.scale));
    case JumpKind::Gaussian: {
      // u = sqrt(2) s x maps exp(-x^2) to the N(0, s^2) density.
      const QuadRule& rule = cached_hermite(nodes);
      double sum = 0.0;
      const double root2s = std::sqrt(2.0) * law.scale;
      for (int i = 0; i < nodes; ++i) sum += rule.weights[i] * h(root2s * rule.nodes[i]);
      return sum / std::sqrt(kPi);
    }
    case JumpKind::CenteredUniform: {
      const QuadRule& rule = cached_legendre(nodes);
      double sum = 0.0;
      for (int i = 0; i < nodes; ++i) sum += rule.weights[i] * h(law.scale * rule.nodes[i]);
      return 0.5 * sum;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace meanfield
