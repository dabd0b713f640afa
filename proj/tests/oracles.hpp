#pragma once

// Test-only reference computations. None of these share code paths with the
// library routines they check.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "qao/model.hpp"

namespace qao::testing {

/// Far-tail abscissae overflow x^k to inf against an underflowed exp(-beta x^2);
/// the product there is zero.
template <class F>
auto tail_safe(F f) {
  return [f](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
}

/// Integral of an even integrand over the real line: 2 * integral over [0, inf).
template <class F>
double integrate_even(F f) {
  static boost::math::quadrature::exp_sinh<double> integrator;
  return 2.0 * integrator.integrate(tail_safe(f), 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

/// Integral of a decaying integrand over the real line.
template <class F>
double integrate_line(F f) {
  static boost::math::quadrature::sinh_sinh<double> integrator;
  return integrator.integrate(tail_safe(f), 1e-14);
}

/// Physicists' Hermite polynomial via Rodrigues' formula: d^n/dy^n exp(-y^2) =
/// P_n(y) exp(-y^2) with P_{k+1} = P_k' - 2 y P_k, and H_n = (-1)^n P_n.
/// Coefficients are handled directly as integer-valued doubles.
inline std::vector<double> hermite_rodrigues(int n) {
  std::vector<double> p{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t j = 1; j < p.size(); ++j) next[j - 1] += static_cast<double>(j) * p[j];
    for (std::size_t j = 0; j < p.size(); ++j) next[j + 1] -= 2.0 * p[j];
    p = std::move(next);
  }
  if (n % 2 == 1)
    for (double& c : p) c = -c;
  return p;
}

/// Pointwise trial function and its derivative, evaluated from the parameter
/// definitions (Hermite values by recurrence, product rule by hand).
struct PointwiseTrial {
  TrialParams params;

  static void hermite_values(int n, double y, double& h, double& dh) {
    double hm1 = 0.0, h0 = 1.0;
    for (int k = 0; k < n; ++k) {
      const double hp1 = 2.0 * y * h0 - 2.0 * k * hm1;
      hm1 = h0;
      h0 = hp1;
    }
    h = h0;
    dh = 2.0 * n * hm1;  // H_n' = 2n H_{n-1}
  }

  void eval(double x, double& psi, double& dpsi) const {
    if (const auto* h = std::get_if<HowfParams>(&params)) {
      const double y = x / h->alpha;
      double hv, dhv;
      hermite_values(h->n, y, hv, dhv);
      const double g = std::exp(-0.5 * y * y);
      psi = hv * g;
      dpsi = (dhv - y * hv) * g / h->alpha;
      return;
    }
    const auto& p = std::get<PpewfParams>(params);
    const double q = 1.0 - p.a * x + p.b * x * x - p.c * x * x * x + p.d * x * x * x * x;
    const double dq = -p.a + 2.0 * p.b * x - 3.0 * p.c * x * x + 4.0 * p.d * x * x * x;
    const double xn = std::pow(x, p.n);
    const double dxn = p.n == 0 ? 0.0 : p.n * std::pow(x, p.n - 1);
    const double g = std::exp(-p.alpha_prime * x * x);
    psi = xn * q * g;
    dpsi = (dxn * q + xn * dq - 2.0 * p.alpha_prime * x * xn * q) * g;
  }
};

/// (T + V) / S by numerical quadrature of the pointwise trial.
inline double quadrature_energy(const TrialParams& params, const Potential& pot) {
  const PointwiseTrial t{params};
  const double s = integrate_line([&](double x) {
    double p, dp;
    t.eval(x, p, dp);
    return p * p;
  });
  const double tv = integrate_line([&](double x) {
    double p, dp;
    t.eval(x, p, dp);
    return 0.5 * dp * dp + pot(x) * p * p;
  });
  return tv / s;
}

/// Householder reduction of a symmetric matrix to tridiagonal form
/// (diagonal d, subdiagonal e); orthogonal, so the spectrum is unchanged.
inline void tridiagonalize(std::vector<std::vector<double>> a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0.0) alpha = -alpha;
    std::vector<double> v(n, 0.0);
    v[k + 1] = a[k + 1][k] - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
    double vv = 0.0;
    for (double x : v) vv += x * x;
    if (vv == 0.0) continue;
    // A <- H A H with H = I - 2 v v^T / (v^T v)
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i] += a[i][j] * v[j];
    for (double& x : p) x *= 2.0 / vv;
    double vp = 0.0;
    for (std::size_t i = 0; i < n; ++i) vp += v[i] * p[i];
    const double kfac = vp / vv;
    for (std::size_t i = 0; i < n; ++i) p[i] -= kfac * v[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= v[i] * p[j] + p[i] * v[j];
  }
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  for (std::size_t i = 1; i < n; ++i) e[i] = a[i][i - 1];
}

/// Number of eigenvalues below t of the tridiagonal (d, e): sign changes in the
/// Sturm sequence of leading principal characteristic polynomials, in ratio form.
inline int count_below(const std::vector<double>& d, const std::vector<double>& e, double t) {
  int negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - t - (i == 0 ? 0.0 : e[i] * e[i] / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

/// Eigenvalues by bisection on the characteristic-polynomial sign count.
inline std::vector<double> eigenvalues_by_bisection(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<double> d, e;
  tridiagonalize(a, d, e);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::abs(e[i]) + (i + 1 < n ? std::abs(e[i + 1]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    double l = lo - 1.0, h = hi + 1.0;
    for (int it = 0; it < 200 && h - l > 1e-15 * std::max(1.0, std::abs(h)); ++it) {
      const double mid = 0.5 * (l + h);
      if (count_below(d, e, mid) > static_cast<int>(k))
        h = mid;
      else
        l = mid;
    }
    out.push_back(0.5 * (l + h));
  }
  return out;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace qao::testing
