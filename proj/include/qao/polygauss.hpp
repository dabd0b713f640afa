#pragma once

// Exact algebra for polynomials and polynomial x Gaussian functions.
//
// A GaussPoly f(x) = P(x) exp(-rate x^2) is the common representation of
// every trial wavefunction. All integrals of products of GaussPoly values
// reduce to sums of even Gaussian moments, which are evaluated in closed form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qao {

/// Dense real polynomial; coeffs()[k] multiplies x^k.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  static Polynomial monomial(std::size_t power, double coeff = 1.0) {
    std::vector<double> c(power + 1, 0.0);
    c[power] = coeff;
    return Polynomial(std::move(c));
  }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of x^k, zero beyond the stored range.
  double operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  bool is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
  }

  /// Index of the last nonzero coefficient; -1 for the zero polynomial.
  int degree() const noexcept {
    for (std::size_t k = coeffs_.size(); k-- > 0;)
      if (coeffs_[k] != 0.0) return static_cast<int>(k);
    return -1;
  }

  double operator()(double x) const noexcept {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
  }

  /// p(s x) for a real scale s.
  Polynomial rescaled(double s) const {
    std::vector<double> c(coeffs_);
    double f = 1.0;
    for (double& ck : c) {
      ck *= f;
      f *= s;
    }
    return Polynomial(std::move(c));
  }

  Polynomial& operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
  }

  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    return *this;
  }

  friend Polynomial operator*(Polynomial p, double s) { return p *= s; }
  friend Polynomial operator*(double s, Polynomial p) { return p *= s; }
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

 private:
  std::vector<double> coeffs_;
};

/// Cauchy product of coefficient sequences.
inline Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  if (p.size() == 0 || q.size() == 0) return Polynomial{};
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi == 0.0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += pi * q[j];
  }
  return Polynomial(std::move(r));
}

inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return poly_mul(p, q); }

inline Polynomial poly_derivative(const Polynomial& p) {
  if (p.size() <= 1) return Polynomial{};
  std::vector<double> r(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) r[k] = static_cast<double>(k + 1) * p[k + 1];
  return Polynomial(std::move(r));
}

/// Physicists' Hermite polynomial H_n(y) from the three-term recurrence.
inline Polynomial hermite(int n) {
  if (n < 0) throw std::invalid_argument("hermite: negative order " + std::to_string(n));
  Polynomial prev{1.0};
  if (n == 0) return prev;
  Polynomial cur{0.0, 2.0};
  const Polynomial two_y{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    Polynomial next = two_y * cur - (2.0 * k) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Integral of x^two_k exp(-beta x^2) over the real line.
///
/// Uses M_{2k+2} = M_{2k} (2k+1) / (2 beta) so that neither the double
/// factorial nor the power of beta is formed on its own.
inline double gaussian_moment(int two_k, double beta) {
  if (two_k < 0 || two_k % 2 != 0)
    throw std::invalid_argument("gaussian_moment: power must be even and non-negative, got " +
                                std::to_string(two_k));
  if (!(beta > 0.0))
    throw std::invalid_argument("gaussian_moment: rate must be positive, got " + std::to_string(beta));
  double m = std::sqrt(std::numbers::pi / beta);
  for (int j = 0; j < two_k; j += 2) m *= (j + 1) / (2.0 * beta);
  return m;
}

/// Sum over even k of coeffs[k] * moment(k, beta); odd powers integrate to zero.
///
/// Hermite-built integrands alternate in sign and cancel heavily, so the sum
/// of moment ratios is accumulated in long double before the sqrt(pi/beta)
/// factor is applied.
inline double gaussian_integral(const Polynomial& p, double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("gaussian_integral: rate must be positive, got " + std::to_string(beta));
  const long double step = 1.0L / (2.0L * beta);
  long double ratio = 1.0L;
  long double sum = 0.0L;
  for (std::size_t k = 0; k < p.size(); k += 2) {
    sum += static_cast<long double>(p[k]) * ratio;
    ratio *= static_cast<long double>(k + 1) * step;
  }
  return static_cast<double>(sum * std::sqrt(std::numbers::pi_v<long double> / beta));
}

/// f(x) = poly(x) exp(-rate x^2), rate > 0.
struct GaussPoly {
  Polynomial poly;
  double rate = 1.0;

  GaussPoly() = default;
  GaussPoly(Polynomial p, double beta) : poly(std::move(p)), rate(beta) {
    if (!(rate > 0.0) || !std::isfinite(rate))
      throw std::invalid_argument("GaussPoly: rate must be positive and finite, got " + std::to_string(rate));
  }

  double operator()(double x) const noexcept { return poly(x) * std::exp(-rate * x * x); }

  /// f'(x) = (poly' - 2 rate x poly) exp(-rate x^2).
  GaussPoly derivative() const {
    return GaussPoly(poly_derivative(poly) - Polynomial{0.0, 2.0 * rate} * poly, rate);
  }
};

namespace detail {

/// M_{2j} / M_0 for j = 0..count-1 at rate beta.
inline std::vector<long double> moment_ratios(std::size_t count, double beta) {
  std::vector<long double> r(count);
  long double ratio = 1.0L;
  for (std::size_t j = 0; j < count; ++j) {
    r[j] = ratio;
    ratio *= static_cast<long double>(2 * j + 1) / (2.0L * beta);
  }
  return r;
}

}  // namespace detail

/// Exact integral of f(x) w(x) g(x) over the real line for a polynomial weight w.
///
/// Sums f_i w_k g_j M_{i+j+k} term by term in long double; forming the
/// product polynomial in double first loses several digits to cancellation.
inline double inner_product(const GaussPoly& f, const Polynomial& weight, const GaussPoly& g) {
  const double beta = f.rate + g.rate;
  const std::size_t top = f.poly.size() + weight.size() + g.poly.size();
  const std::vector<long double> m = detail::moment_ratios(top / 2 + 1, beta);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < f.poly.size(); ++i) {
    if (f.poly[i] == 0.0) continue;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      if (weight[k] == 0.0) continue;
      const long double fw = static_cast<long double>(f.poly[i]) * weight[k];
      for (std::size_t j = (i + k) % 2; j < g.poly.size(); j += 2) sum += fw * g.poly[j] * m[(i + k + j) / 2];
    }
  }
  return static_cast<double>(sum * std::sqrt(std::numbers::pi_v<long double> / beta));
}

/// Exact integral of f(x) g(x) over the real line.
inline double inner_product(const GaussPoly& f, const GaussPoly& g) { return inner_product(f, Polynomial{1.0}, g); }

}  // namespace qao
