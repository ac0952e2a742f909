#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace dftt {

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace detail {

// Regularized lower incomplete gamma P(a,x) by power series. Valid for
// x < a+1 where the series converges fast.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) <=
        std::abs(sum) * std::numeric_limits<double>::epsilon()) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("gamma_p_series: no convergence");
}

// Regularized upper incomplete gamma Q(a,x) by modified Lentz continued
// fraction. Valid for x >= a+1.
inline double gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <=
        4.0 * std::numeric_limits<double>::epsilon()) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace detail

// P(chi²_dof > x), the survival function of a chi-squared variable.
inline double chi2_survival(double dof, double x) {
  if (!(dof > 0.0)) {
    throw std::invalid_argument("chi2_survival: dof must be positive");
  }
  if (x < 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  const double a = 0.5 * dof;
  const double half_x = 0.5 * x;
  if (half_x < a + 1.0) {
    return 1.0 - detail::gamma_p_series(a, half_x);
  }
  return detail::gamma_q_cf(a, half_x);
}

// Kolmogorov-Smirnov statistic of a sample against a continuous cdf:
// sup_x |F_n(x) - cdf(x)| via the order statistics.
template <typename Cdf>
double ks_statistic(std::span<const double> sample, Cdf&& cdf) {
  if (sample.empty()) {
    throw std::invalid_argument("ks_statistic: empty sample");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    sup = std::max(sup, (static_cast<double>(i) + 1.0) / n - f);
    sup = std::max(sup, f - static_cast<double>(i) / n);
  }
  return sup;
}

inline double ks_statistic_normal(std::span<const double> sample) {
  return ks_statistic(sample, [](double x) { return normal_cdf(x); });
}

// log(cos x) + x²/2, the Taylor remainder of log cos after its leading term.
// Near zero the direct expression loses everything to cancellation (the
// result is O(x⁴) riding on O(x²) inputs), so small |x| switches to the
// series -x⁴/12 - x⁶/45 - 17x⁸/2520 - 31x¹⁰/14175.
inline double log_cos_residual(double x) {
  const double ax = std::abs(x);
  if (!(ax < 1.5707963267948966)) {
    throw std::domain_error("log_cos_residual: |x| must be < pi/2");
  }
  if (ax < 0.0625) {
    const double x2 = x * x;
    return -x2 * x2 *
           (1.0 / 12.0 +
            x2 * (1.0 / 45.0 + x2 * (17.0 / 2520.0 + x2 * (31.0 / 14175.0))));
  }
  return std::log(std::cos(x)) + 0.5 * x * x;
}

}  // namespace dftt
