#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace dftt::theory {

// Model inputs: m spectral lines whose squared magnitudes are assumed
// uniform on the simplex { u_j >= 0, sum u_j = 2m^2 }, tested against a
// squared threshold t2.
struct TheoryParams {
  std::size_t m;
  double t2;

  TheoryParams(std::size_t m_lines, double threshold_sq)
      : m(m_lines), t2(threshold_sq) {
    if (m < 2) {
      throw std::invalid_argument("TheoryParams: m must be >= 2");
    }
    if (!(t2 >= 0.0) || !std::isfinite(t2)) {
      throw std::invalid_argument("TheoryParams: t2 must be finite and >= 0");
    }
  }

  // t2 for the threshold sqrt(-n ln 0.05) at n = 2m, i.e. 2m ln 20.
  static TheoryParams log005(std::size_t m_lines) {
    return TheoryParams(m_lines,
                        2.0 * static_cast<double>(m_lines) * std::log(20.0));
  }

  // t2 for the threshold sqrt(3n) at n = 2m.
  static TheoryParams sqrt3n(std::size_t m_lines) {
    return TheoryParams(m_lines, 6.0 * static_cast<double>(m_lines));
  }
};

// Density of one squared magnitude: (m-1)/(2m^2) (1 - u/(2m^2))^(m-2) on
// [0, 2m^2], zero outside.
inline double marginal_pdf(double u, std::size_t m) {
  if (m < 2) {
    throw std::invalid_argument("marginal_pdf: m must be >= 2");
  }
  const double cap = 2.0 * static_cast<double>(m) * static_cast<double>(m);
  if (u < 0.0 || u > cap) return 0.0;
  const double base = 1.0 - u / cap;
  return (static_cast<double>(m) - 1.0) / cap *
         std::pow(base, static_cast<double>(m) - 2.0);
}

// Joint density of two squared magnitudes:
// (m-1)(m-2)/(2m^2)^2 (1 - (u+v)/(2m^2))^(m-3) on the triangle
// u,v >= 0, u+v <= 2m^2.
inline double joint_pdf(double u, double v, std::size_t m) {
  if (m < 3) {
    throw std::invalid_argument("joint_pdf: m must be >= 3");
  }
  const double cap = 2.0 * static_cast<double>(m) * static_cast<double>(m);
  if (u < 0.0 || v < 0.0 || u + v > cap) return 0.0;
  const double base = 1.0 - (u + v) / cap;
  return (static_cast<double>(m) - 1.0) * (static_cast<double>(m) - 2.0) /
         (cap * cap) * std::pow(base, static_cast<double>(m) - 3.0);
}

// P(|f_j|^2 > t) = (1 - t/(2m^2))^(m-1), evaluated via log1p so large m does
// not lose the tail.
inline double marginal_survival(double t, std::size_t m) {
  if (m < 2) {
    throw std::invalid_argument("marginal_survival: m must be >= 2");
  }
  const double cap = 2.0 * static_cast<double>(m) * static_cast<double>(m);
  if (t < 0.0) return 1.0;
  if (t >= cap) return 0.0;
  return std::exp((static_cast<double>(m) - 1.0) * std::log1p(-t / cap));
}

// P(|f_i|^2 > s and |f_j|^2 > t) = (1 - (s+t)/(2m^2))^(m-1).
inline double joint_survival(double s, double t, std::size_t m) {
  if (m < 3) {
    throw std::invalid_argument("joint_survival: m must be >= 3");
  }
  const double cap = 2.0 * static_cast<double>(m) * static_cast<double>(m);
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("joint_survival: s,t must be >= 0");
  }
  if (s + t >= cap) return 0.0;
  return std::exp((static_cast<double>(m) - 1.0) * std::log1p(-(s + t) / cap));
}

// Variance of the pass indicator F = 1{ |f_j|^2 <= t2 }.
inline double indicator_variance(const TheoryParams& p) {
  const double cap = 2.0 * static_cast<double>(p.m) * static_cast<double>(p.m);
  if (p.t2 > cap) {
    throw std::domain_error("indicator_variance: t2 exceeds 2m^2");
  }
  const double q = marginal_survival(p.t2, p.m);
  return q - q * q;
}

namespace detail {

// Cov(F_i, F_j) = (1 - t2/m^2)^(m-1) - (1 - t2/(2m^2))^(2m-2), computed as
// q^2 expm1(delta) to survive the near-total cancellation at large m.
// With y = t2/(2m^2), the log ratio collapses exactly:
// (1-2y)/(1-y)^2 = 1 - (y/(1-y))^2, so delta = (m-1) log1p(-z^2) carries no
// subtraction of close quantities.
inline double indicator_covariance(const TheoryParams& p) {
  const double md = static_cast<double>(p.m);
  if (p.m < 3) {
    throw std::invalid_argument("indicator covariance: m must be >= 3");
  }
  if (p.t2 > md * md) {
    // Beyond t2 = m^2 the closed form's base goes negative; the derivation
    // does not cover that regime, so refuse rather than extrapolate.
    throw std::domain_error("indicator covariance: t2 exceeds m^2");
  }
  const double y = p.t2 / (2.0 * md * md);
  const double z = y / (1.0 - y);
  const double q = std::exp((md - 1.0) * std::log1p(-y));
  return q * q * std::expm1((md - 1.0) * std::log1p(-z * z));
}

}  // namespace detail

// Corr(F_i, F_j) for i != j.
inline double indicator_correlation(const TheoryParams& p) {
  const double v = indicator_variance(p);
  if (v == 0.0) {
    throw std::domain_error("indicator_correlation: degenerate indicator");
  }
  return detail::indicator_covariance(p) / v;
}

// V[N1] = m V[F] + m(m-1) Cov(F_i, F_j).
inline double var_n1(const TheoryParams& p) {
  const double md = static_cast<double>(p.m);
  return md * indicator_variance(p) +
         md * (md - 1.0) * detail::indicator_covariance(p);
}

// Divisor a defined by V[N1] = 0.95 * 0.05 * n / a with n = 2m.
inline double divisor_a(const TheoryParams& p) {
  const double v = var_n1(p);
  if (v <= 0.0) {
    throw std::domain_error("divisor_a: V[N1] not positive");
  }
  return 0.95 * 0.05 * 2.0 * static_cast<double>(p.m) / v;
}

// Limit of divisor_a under the log005 threshold as m grows. m = 2^24 is past
// the point where successive doublings move the value by less than 1e-5.
inline double limit_a() {
  static const double value = divisor_a(TheoryParams::log005(std::size_t{1} << 24));
  return value;
}

struct TheoreticalQuantities {
  std::size_t m;
  double t2;
  double mean_f;
  double var_f;
  double corr;
  double var_n1;
  double a;
};

inline TheoreticalQuantities theoretical_quantities(const TheoryParams& p) {
  TheoreticalQuantities out;
  out.m = p.m;
  out.t2 = p.t2;
  out.mean_f = 1.0 - marginal_survival(p.t2, p.m);
  out.var_f = indicator_variance(p);
  out.corr = indicator_correlation(p);
  out.var_n1 = var_n1(p);
  out.a = divisor_a(p);
  return out;
}

}  // namespace dftt::theory
