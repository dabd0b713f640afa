#pragma once

// Consistency checks between independent routes to the same numbers:
// closed forms vs the moment-based Rayleigh quotient, and oracle invariants
// (basis-scale independence, truncation monotonicity, level ordering,
// lambda monotonicity).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qao/closedform.hpp"
#include "qao/model.hpp"
#include "qao/oracle.hpp"
#include "qao/reference_data.hpp"

namespace qao {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest observed deviation
  double tolerance = 0.0;
};

namespace detail {
inline double relative_deviation(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
}
}  // namespace detail

inline CheckOutcome check_howf_closed_forms() {
  CheckOutcome out{"closed forms match Rayleigh quotient", true, 0.0, 1e-10};
  for (int n = 0; n <= 10; ++n) {
    for (double alpha : {0.3, 0.7, 1.0, 1.6}) {
      const HowfParams p{n, alpha};
      for (double lam : {0.0, 0.25, 1.0, 10.0})
        out.worst = std::max(out.worst, detail::relative_deviation(closedform::energy_howf_qao(n, alpha, lam),
                                                                   rayleigh_quotient(p, Potential(1.0, lam))));
      out.worst = std::max(out.worst, detail::relative_deviation(closedform::energy_howf_quartic(n, alpha),
                                                                 rayleigh_quotient(p, Potential(0.0, 0.25))));
      out.worst = std::max(out.worst, detail::relative_deviation(closedform::energy_howf_quadratic(n, alpha),
                                                                 rayleigh_quotient(p, Potential(1.0, 0.0))));
    }
  }
  out.passed = out.worst <= out.tolerance;
  return out;
}

inline CheckOutcome check_coefficient_sum() {
  CheckOutcome out{"4*sum(n-i)+1 == 2n^2+2n+1", true, 0.0, 0.0};
  for (int n = 0; n <= 20; ++n)
    if (closedform::quartic_coefficient_sum(n) != closedform::quartic_coefficient(n)) {
      out.passed = false;
      out.worst = 1.0;
    }
  return out;
}

inline CheckOutcome check_harmonic_levels() {
  CheckOutcome out{"lambda = 0 recovers (2n+1)/2", true, 0.0, 1e-14};
  for (int n = 0; n <= 10; ++n)
    out.worst = std::max(out.worst, detail::relative_deviation(rayleigh_quotient(HowfParams{n, 1.0}, Potential(1.0, 0.0)),
                                                               (2.0 * n + 1.0) / 2.0));
  out.passed = out.worst <= out.tolerance;
  return out;
}

inline CheckOutcome check_scale_invariance() {
  CheckOutcome out{"Rayleigh quotient is scale invariant", true, 0.0, 1e-12};
  const Potential pot(1.0, 1.0);
  for (int n = 0; n <= 5; ++n) {
    const GaussPoly psi = build_trial(PpewfParams{n, 1.3, 0.2, 0.5, -0.1, 0.3});
    const double base = rayleigh_quotient(psi, pot);
    for (double s : {-3.0, 1e-3, 7.5, 1e4}) {
      GaussPoly scaled = psi;
      scaled.poly *= s;
      out.worst = std::max(out.worst, detail::relative_deviation(rayleigh_quotient(scaled, pot), base));
    }
  }
  out.passed = out.worst <= out.tolerance;
  return out;
}

inline CheckOutcome check_basis_scale_independence() {
  CheckOutcome out{"oracle ground energy independent of omega", true, 0.0, 1e-8};
  const Potential pot(1.0, 1.0);
  std::vector<double> e;
  for (double omega : {0.5, 1.0, 2.0}) {
    SpectrumOptions opt;
    opt.omega = omega;
    e.push_back(exact_spectrum(pot, 1, 1e-11, opt).eigenvalues[0]);
  }
  for (double v : e) out.worst = std::max(out.worst, std::abs(v - e[1]));
  out.passed = out.worst <= out.tolerance;
  return out;
}

/// Along the oracle's doubling sequence up to N = 480 (960 costs about a minute
/// here). Below N = 60 the truncated x^4 keeps the bases from nesting and the
/// ground level can still rise.
inline CheckOutcome check_truncation_monotone() {
  CheckOutcome out{"ground level non-increasing with basis size", true, 0.0, 1e-12};
  const SpectrumOptions opt;
  for (double lam : reference::lambda_grid) {
    const Potential pot(1.0, lam);
    double previous = INFINITY;
    for (std::size_t n = opt.initial_basis; n <= opt.max_basis / 2; n *= 2) {
      const double e0 = oscillator_basis_levels(pot, n, default_basis_scale(pot)).front();
      out.worst = std::max(out.worst, (e0 - previous) / std::abs(e0));
      previous = e0;
    }
  }
  out.passed = out.worst <= out.tolerance;
  return out;
}

inline CheckOutcome check_level_ordering() {
  CheckOutcome out{"levels strictly ascending and increasing in lambda", true, 0.0, 0.0};
  std::vector<double> previous;
  for (double lam : reference::lambda_grid) {
    const std::vector<double> levels = exact_spectrum(Potential(1.0, lam), 6, 1e-8).eigenvalues;
    for (std::size_t k = 1; k < levels.size(); ++k)
      if (!(levels[k] > levels[k - 1])) out.passed = false;
    if (!previous.empty())
      for (std::size_t k = 0; k < levels.size(); ++k)
        if (!(levels[k] > previous[k])) out.passed = false;
    previous = levels;
  }
  out.worst = out.passed ? 0.0 : 1.0;
  return out;
}

inline std::vector<CheckOutcome> run_selfcheck() {
  return {check_howf_closed_forms(),  check_coefficient_sum(),           check_harmonic_levels(),
          check_scale_invariance(),   check_basis_scale_independence(),  check_truncation_monotone(),
          check_level_ordering()};
}

}  // namespace qao
