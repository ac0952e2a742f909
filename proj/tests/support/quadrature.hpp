#pragma once

// Gauss-Legendre quadrature for the density-vs-closed-form cross checks.
// Nodes by Newton iteration on P_n; plenty for the smooth integrands here.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace testsupport {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t order) {
    nodes.resize(order);
    weights.resize(order);
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
      double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(order) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= order; ++k) {
          const double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                             (static_cast<double>(k) - 1.0) * p0) /
                            static_cast<double>(k);
          p0 = p1;
          p1 = pk;
        }
        dp = static_cast<double>(order) * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / dp;
        x -= step;
        if (std::abs(step) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[order - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weights[i] = w;
      weights[order - 1 - i] = w;
    }
  }

  double integrate(double a, double b, const std::function<double(double)>& f) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return sum * half;
  }

  // Composite rule over `panels` equal subintervals, for integrands whose
  // high-order derivatives blow up (large-m powers).
  double integrate_panels(double a, double b, std::size_t panels,
                          const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + (b - a) * static_cast<double>(p) / static_cast<double>(panels);
      const double hi = a + (b - a) * static_cast<double>(p + 1) / static_cast<double>(panels);
      sum += integrate(lo, hi, f);
    }
    return sum;
  }
};

}  // namespace testsupport
