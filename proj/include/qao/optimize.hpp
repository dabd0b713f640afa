#pragma once

// Energy minimization over trial parameters.
//
//  - minimize_1d: coarse grid scan followed by golden-section refinement;
//    used for the single length scale of the HOWF family.
//  - minimize_simplex: Nelder-Mead downhill simplex; used for the five
//    PPEWF parameters (alpha', a, b, c, d), with deterministic restarts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qao/model.hpp"
#include "qao/reference_data.hpp"

namespace qao {

/// Raised when a minimizer cannot produce a usable optimum.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScalarMinimum {
  double arg = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Minimizes a unimodal objective on [lo, hi].
///
/// A 64-point uniform scan localizes the minimum to a pair of grid cells,
/// then golden-section search narrows that interval below tol.
template <class Objective>
ScalarMinimum minimize_1d(Objective&& objective, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_1d: empty bracket");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_1d: tolerance must be positive");
  constexpr int grid_points = 64;
  const double h = (hi - lo) / (grid_points - 1);
  std::size_t evals = 0;
  auto f = [&](double x) {
    ++evals;
    const double v = objective(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double v = f(lo + i * h);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best == grid_points - 1)
    throw SolverError("minimize_1d: no interior minimum in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo + (best - 1) * h;
  double b = lo + (best + 1) * h;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  ScalarMinimum result;
  result.arg = 0.5 * (a + b);
  result.value = f(result.arg);
  result.evaluations = evals;
  return result;
}

struct SimplexOptions {
  double tol_x = 1e-10;
  double tol_f = 1e-12;
  std::size_t max_evals = 200000;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct SimplexMinimum {
  std::vector<double> arg;
  double value = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

/// Nelder-Mead downhill simplex started from init with edge lengths scale.
///
/// Stops when the simplex diameter (max-norm distance of any vertex from the
/// best one) is below tol_x and the value spread is below tol_f * max(1, |f_best|),
/// or when the evaluation budget is exhausted (converged = false). Non-finite objective
/// values are treated as +inf, except at the initial point where they are an
/// error.
template <class Objective>
SimplexMinimum minimize_simplex(Objective&& objective, std::span<const double> init, std::span<const double> scale,
                                const SimplexOptions& opt = {}) {
  const std::size_t dim = init.size();
  if (dim == 0) throw std::invalid_argument("minimize_simplex: empty parameter vector");
  if (scale.size() != dim) throw std::invalid_argument("minimize_simplex: scale/init size mismatch");
  for (std::size_t i = 0; i < dim; ++i) {
    if (!std::isfinite(init[i])) throw std::invalid_argument("minimize_simplex: non-finite initial point");
    if (!(scale[i] > 0.0)) throw std::invalid_argument("minimize_simplex: scale must be positive");
  }

  using Point = std::vector<double>;
  std::size_t evals = 0;
  auto f = [&](const Point& x) {
    ++evals;
    const double v = objective(std::span<const double>(x));
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<Point> x(dim + 1, Point(init.begin(), init.end()));
  std::vector<double> fx(dim + 1);
  fx[0] = f(x[0]);
  if (!std::isfinite(fx[0])) throw SolverError("minimize_simplex: objective is not finite at the initial point");
  for (std::size_t i = 0; i < dim; ++i) {
    x[i + 1][i] += scale[i];
    fx[i + 1] = f(x[i + 1]);
  }

  std::vector<std::size_t> order(dim + 1);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return fx[l] < fx[r]; });
    std::vector<Point> xs(dim + 1);
    std::vector<double> fs(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) {
      xs[k] = std::move(x[order[k]]);
      fs[k] = fx[order[k]];
    }
    x = std::move(xs);
    fx = std::move(fs);
  };
  auto along = [&](const Point& base, const Point& towards, double t) {
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = base[i] + t * (towards[i] - base[i]);
    return p;
  };

  SimplexMinimum result;
  Point centroid(dim);
  for (;;) {
    sort_vertices();
    double diameter = 0.0;
    for (std::size_t k = 1; k <= dim; ++k)
      for (std::size_t i = 0; i < dim; ++i) diameter = std::max(diameter, std::abs(x[k][i] - x[0][i]));
    const double spread = fx[dim] - fx[0];
    if (diameter < opt.tol_x && spread < opt.tol_f * std::max(1.0, std::abs(fx[0]))) {
      result.converged = true;
      break;
    }
    if (evals >= opt.max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += x[k][i];
    for (double& c : centroid) c /= static_cast<double>(dim);

    const Point reflected = along(centroid, x[dim], -opt.reflection);
    const double fr = f(reflected);
    if (fr < fx[0]) {
      Point expanded = along(centroid, x[dim], -opt.reflection * opt.expansion);
      const double fe = f(expanded);
      if (fe < fr) {
        x[dim] = std::move(expanded);
        fx[dim] = fe;
      } else {
        x[dim] = reflected;
        fx[dim] = fr;
      }
      continue;
    }
    if (fr < fx[dim - 1]) {
      x[dim] = reflected;
      fx[dim] = fr;
      continue;
    }
    bool accepted = false;
    if (fr < fx[dim]) {
      Point outside = along(centroid, reflected, opt.contraction);
      const double fo = f(outside);
      if (fo <= fr) {
        x[dim] = std::move(outside);
        fx[dim] = fo;
        accepted = true;
      }
    } else {
      Point inside = along(centroid, x[dim], opt.contraction);
      const double fi = f(inside);
      if (fi < fx[dim]) {
        x[dim] = std::move(inside);
        fx[dim] = fi;
        accepted = true;
      }
    }
    if (!accepted) {
      for (std::size_t k = 1; k <= dim; ++k) {
        x[k] = along(x[0], x[k], opt.shrink);
        fx[k] = f(x[k]);
      }
    }
  }
  result.arg = x[0];
  result.value = fx[0];
  result.evaluations = evals;
  return result;
}

/// Optimized trial for one (family, level, potential).
struct VariationalResult {
  Family family = Family::Howf;
  int n = 0;
  Potential potential;
  TrialParams params;
  double energy = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  int restarts_used = 0;
};

struct HowfOptions {
  double bracket_lo = 0.05;
  double bracket_hi = 5.0;
  double tol = 1e-8;
};

inline VariationalResult solve_howf(int n, const Potential& pot, const HowfOptions& opt = {}) {
  if (n < 0) throw std::invalid_argument("solve_howf: level must be non-negative");
  auto energy = [&](double alpha) { return rayleigh_quotient(HowfParams{n, alpha}, pot); };
  const ScalarMinimum m = minimize_1d(energy, opt.bracket_lo, opt.bracket_hi, opt.tol);
  VariationalResult r;
  r.family = Family::Howf;
  r.n = n;
  r.potential = pot;
  r.params = HowfParams{n, m.arg};
  r.energy = rayleigh_quotient(r.params, pot);
  r.evaluations = m.evaluations;
  r.converged = true;
  return r;
}

struct PpewfOptions {
  /// Explicit starting points; when empty, the defaults below are used.
  std::vector<PpewfParams> seeds;
  /// Start from the tabulated parameters at the nearest lambda (n <= 5).
  bool tabulated_seed = true;
  /// Start from a = b = c = d = 0 with alpha' = 1 / (2 alpha_howf^2).
  bool howf_seed = true;
  int restarts = 16;
  double perturbation = 0.25;
  std::uint64_t rng_seed = 20250601;
  /// Pin the parity-breaking coefficients a and c at zero.
  bool even_odd_only = false;
  SimplexOptions simplex{};
};

namespace detail {

/// Maps PPEWF parameters to the free-parameter vector and back.
struct PpewfLayout {
  int n;
  bool even_odd_only;

  std::vector<double> pack(const PpewfParams& p) const {
    if (even_odd_only) return {p.alpha_prime, p.b, p.d};
    return {p.alpha_prime, p.a, p.b, p.c, p.d};
  }

  PpewfParams unpack(std::span<const double> v) const {
    PpewfParams p;
    p.n = n;
    p.alpha_prime = v[0];
    if (even_odd_only) {
      p.b = v[1];
      p.d = v[2];
    } else {
      p.a = v[1];
      p.b = v[2];
      p.c = v[3];
      p.d = v[4];
    }
    return p;
  }
};

/// Uniform double in [-1, 1) from the top 53 bits; identical on every platform.
inline double symmetric_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

inline double params_norm(const PpewfParams& p) {
  return std::sqrt(p.alpha_prime * p.alpha_prime + p.a * p.a + p.b * p.b + p.c * p.c + p.d * p.d);
}

inline bool lexicographic_less(const PpewfParams& l, const PpewfParams& r) {
  const double lv[] = {l.alpha_prime, l.a, l.b, l.c, l.d};
  const double rv[] = {r.alpha_prime, r.a, r.b, r.c, r.d};
  return std::lexicographical_compare(std::begin(lv), std::end(lv), std::begin(rv), std::end(rv));
}

}  // namespace detail

/// Minimizes the PPEWF Rayleigh quotient for level n (0..5).
///
/// Every start (explicit seeds or the defaults, then `restarts` random
/// perturbations of the best optimum so far) runs the simplex to convergence
/// and once more from its own optimum. The lowest energy wins; optima within
/// tol_f of it are ranked by parameter norm, then lexicographically.
inline VariationalResult solve_ppewf(int n, const Potential& pot, const PpewfOptions& opt = {}) {
  if (n < 0 || n > 5) throw std::invalid_argument("solve_ppewf: level must be in 0..5");
  const detail::PpewfLayout layout{n, opt.even_odd_only};

  auto objective = [&](std::span<const double> v) {
    const PpewfParams p = layout.unpack(v);
    if (!(p.alpha_prime > 0.0) || !std::isfinite(p.alpha_prime)) return std::numeric_limits<double>::infinity();
    return rayleigh_quotient(p, pot);
  };

  std::vector<PpewfParams> starts = opt.seeds;
  if (starts.empty()) {
    if (opt.tabulated_seed) {
      const reference::ParameterRow& row = reference::nearest_row(n, pot.lambda);
      starts.push_back(PpewfParams{n, row.alpha_prime, row.a, row.b, row.c, row.d});
    }
    if (opt.howf_seed) {
      const auto howf = std::get<HowfParams>(solve_howf(n, pot).params);
      starts.push_back(PpewfParams{n, 1.0 / (2.0 * howf.alpha * howf.alpha)});
    }
  }
  for (PpewfParams& s : starts) {
    s.n = n;
    if (opt.even_odd_only) s.a = s.c = 0.0;
  }
  if (starts.empty()) throw std::invalid_argument("solve_ppewf: no starting points");

  struct Candidate {
    PpewfParams params;
    double energy;
    bool converged;
  };
  std::vector<Candidate> found;
  std::size_t evaluations = 0;

  auto run_from = [&](const PpewfParams& start) -> std::optional<Candidate> {
    std::vector<double> x = layout.pack(start);
    if (!std::isfinite(objective(x))) return std::nullopt;
    SimplexMinimum m;
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> scale(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) scale[i] = 0.1 * std::max(std::abs(x[i]), 0.1);
      m = minimize_simplex(objective, x, scale, opt.simplex);
      evaluations += m.evaluations;
      x = m.arg;
    }
    return Candidate{layout.unpack(x), m.value, m.converged};
  };

  auto better = [&](const Candidate& l, const Candidate& r) {
    if (std::abs(l.energy - r.energy) > opt.simplex.tol_f) return l.energy < r.energy;
    const double nl = detail::params_norm(l.params), nr = detail::params_norm(r.params);
    if (nl != nr) return nl < nr;
    return detail::lexicographic_less(l.params, r.params);
  };
  auto best_index = [&] {
    std::size_t b = 0;
    for (std::size_t i = 1; i < found.size(); ++i)
      if (better(found[i], found[b])) b = i;
    return b;
  };

  for (const PpewfParams& s : starts)
    if (auto c = run_from(s)) found.push_back(*c);
  if (found.empty()) throw SolverError("solve_ppewf: no starting point yields a finite energy");

  std::mt19937_64 rng(opt.rng_seed);
  int restarts_used = 0;
  for (int r = 0; r < opt.restarts; ++r) {
    const PpewfParams base = found[best_index()].params;
    std::vector<double> x = layout.pack(base);
    x[0] *= 1.0 + opt.perturbation * detail::symmetric_unit(rng);
    for (std::size_t i = 1; i < x.size(); ++i)
      x[i] += opt.perturbation * std::max(std::abs(x[i]), 0.1) * detail::symmetric_unit(rng);
    ++restarts_used;
    if (auto c = run_from(layout.unpack(x))) found.push_back(*c);
  }

  const Candidate& best = found[best_index()];
  VariationalResult result;
  result.family = Family::Ppewf;
  result.n = n;
  result.potential = pot;
  result.params = best.params;
  result.energy = rayleigh_quotient(result.params, pot);
  result.evaluations = evaluations;
  result.converged = best.converged;
  result.restarts_used = restarts_used;
  return result;
}

inline VariationalResult solve(Family family, int n, const Potential& pot, const PpewfOptions& ppewf = {}) {
  return family == Family::Howf ? solve_howf(n, pot) : solve_ppewf(n, pot, ppewf);
}

/// Excited-state trials that fall below the n-th exact level by more than
/// `threshold` have collapsed onto lower states of the same parity sector.
inline bool is_collapsed(double energy, double exact_level_energy, double threshold = 1e-3) {
  return energy < exact_level_energy - threshold;
}

}  // namespace qao
