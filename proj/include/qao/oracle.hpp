#pragma once

// Reference spectrum by diagonalizing H in a truncated harmonic-oscillator
// basis |0>, ..., |N-1> of frequency omega.
//
// In that basis x = (a + a^dag) / sqrt(2 omega) and p = i sqrt(omega/2) (a^dag - a),
// so x^2 and p^2 couple levels i and i +- 2 only; x^4 is formed as the
// product of the truncated x^2 with itself. Every operator preserves parity,
// which lets the eigenproblem split into even and odd blocks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qao/model.hpp"
#include "qao/optimize.hpp"

namespace qao {

/// Dense real symmetric matrix; set() mirrors every write.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  std::size_t dimension() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

  void set(std::size_t i, std::size_t j, double v) noexcept {
    data_[i * dim_ + j] = v;
    data_[j * dim_ + i] = v;
  }
  void add(std::size_t i, std::size_t j, double v) noexcept { set(i, j, (*this)(i, j) + v); }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  /// Principal submatrix on the given index set.
  SymmetricMatrix restricted(const std::vector<std::size_t>& idx) const {
    SymmetricMatrix m(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = r; c < idx.size(); ++c) m.set(r, c, (*this)(idx[r], idx[c]));
    return m;
  }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Hamiltonian matrix of p^2/2 + g^2 x^2/2 + lambda x^4 in the first basis_size
/// oscillator states of frequency omega.
inline SymmetricMatrix build_hamiltonian(const Potential& pot, std::size_t basis_size, double omega) {
  if (basis_size < 2) throw std::invalid_argument("build_hamiltonian: basis size must be at least 2");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("build_hamiltonian: omega must be positive");
  const std::size_t n = basis_size;

  // <i|x^2|j>: diagonal (2i+1)/(2 omega), off-diagonal sqrt((i+1)(i+2))/(2 omega)
  SymmetricMatrix x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    x2.set(i, i, (2.0 * i + 1.0) / (2.0 * omega));
    if (i + 2 < n) x2.set(i, i + 2, std::sqrt((i + 1.0) * (i + 2.0)) / (2.0 * omega));
  }

  SymmetricMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    // p^2 / 2
    h.add(i, i, 0.5 * omega * (2.0 * i + 1.0) / 2.0);
    if (i + 2 < n) h.add(i, i + 2, -0.5 * 0.5 * omega * std::sqrt((i + 1.0) * (i + 2.0)));
    // g^2 x^2 / 2
    h.add(i, i, 0.5 * pot.g_squared * x2(i, i));
    if (i + 2 < n) h.add(i, i + 2, 0.5 * pot.g_squared * x2(i, i + 2));
  }
  if (pot.lambda != 0.0) {
    // (x^2)^2 restricted to the truncated space; x^2 has bandwidth 2 so the product has bandwidth 4
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < std::min(n, i + 5); ++j) {
        double s = 0.0;
        const std::size_t k_lo = j >= 2 ? j - 2 : 0;
        const std::size_t k_hi = std::min(n - 1, i + 2);
        for (std::size_t k = k_lo; k <= k_hi; ++k) s += x2(i, k) * x2(k, j);
        if (s != 0.0) h.add(i, j, pot.lambda * s);
      }
    }
  }
  return h;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// Sweeps until the off-diagonal Frobenius norm falls below tol * ||m||_F.
inline std::vector<double> eigenvalues_symmetric(const SymmetricMatrix& m, double tol = 1e-14) {
  const std::size_t n = m.dimension();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  const double norm = m.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  constexpr int max_sweeps = 100;
  int sweep = 0;
  while (off_norm() > tol * norm) {
    if (++sweep > max_sweeps)
      throw SolverError("eigenvalues_symmetric: no convergence after " + std::to_string(max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p), aqq = at(q, q);
        // rotation angle from tan(2 theta) = 2 apq / (aqq - app), smaller root
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues of the oscillator-basis Hamiltonian, solved per parity block.
inline std::vector<double> oscillator_basis_levels(const Potential& pot, std::size_t basis_size, double omega) {
  const SymmetricMatrix h = build_hamiltonian(pot, basis_size, omega);
  std::vector<std::size_t> even, odd;
  for (std::size_t i = 0; i < basis_size; ++i) (i % 2 == 0 ? even : odd).push_back(i);
  std::vector<double> levels = eigenvalues_symmetric(h.restricted(even));
  const std::vector<double> odd_levels = eigenvalues_symmetric(h.restricted(odd));
  levels.insert(levels.end(), odd_levels.begin(), odd_levels.end());
  std::sort(levels.begin(), levels.end());
  return levels;
}

struct SpectrumResult {
  Potential potential;
  std::size_t basis_size = 0;
  double basis_scale = 1.0;
  std::vector<double> eigenvalues;  // the requested lowest levels, ascending
  bool converged = false;
  double drift = 0.0;
};

/// omega balancing the x^2 and x^4 terms: max(sqrt(g^2), (3 lambda)^(1/3)).
inline double default_basis_scale(const Potential& pot) {
  return std::max(std::sqrt(pot.g_squared), std::cbrt(3.0 * pot.lambda));
}

struct SpectrumOptions {
  std::size_t initial_basis = 60;
  std::size_t max_basis = 960;
  /// Overrides default_basis_scale when set.
  double omega = 0.0;
};

/// Lowest `levels` eigenvalues, doubling the basis until successive sizes
/// agree to within tol on every requested level.
inline SpectrumResult exact_spectrum(const Potential& pot, std::size_t levels, double tol,
                                     const SpectrumOptions& opt = {}) {
  if (levels == 0 || levels > 12) throw std::invalid_argument("exact_spectrum: levels must be in 1..12");
  if (!(tol > 0.0)) throw std::invalid_argument("exact_spectrum: tolerance must be positive");
  const double omega = opt.omega > 0.0 ? opt.omega : default_basis_scale(pot);

  SpectrumResult r;
  r.potential = pot;
  r.basis_scale = omega;
  std::vector<double> previous;
  for (std::size_t n = opt.initial_basis; n <= opt.max_basis; n *= 2) {
    std::vector<double> current = oscillator_basis_levels(pot, n, omega);
    current.resize(levels);
    r.basis_size = n;
    if (!previous.empty()) {
      r.drift = 0.0;
      for (std::size_t k = 0; k < levels; ++k) r.drift = std::max(r.drift, std::abs(current[k] - previous[k]));
      if (r.drift < tol) {
        r.eigenvalues = std::move(current);
        r.converged = true;
        return r;
      }
    }
    previous = std::move(current);
  }
  throw SolverError("exact_spectrum: no convergence to " + std::to_string(tol) + " by basis size " +
                    std::to_string(opt.max_basis) + " (drift " + std::to_string(r.drift) + ")");
}

}  // namespace qao
