#pragma once

// Potentials, the two trial-wavefunction families, and the Rayleigh quotient
// E[psi] = <psi|H|psi> / <psi|psi> for H = p^2/2 + g^2 x^2/2 + lambda x^4
// (hbar = m = 1).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "qao/polygauss.hpp"

namespace qao {

enum class PotentialKind { Quadratic, PureQuartic, Anharmonic };

inline std::string_view to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::Quadratic: return "quadratic";
    case PotentialKind::PureQuartic: return "pure-quartic";
    case PotentialKind::Anharmonic: return "anharmonic";
  }
  return "?";
}

/// V(x) = g_squared x^2 / 2 + lambda x^4.
struct Potential {
  double g_squared = 1.0;
  double lambda = 0.0;

  Potential() = default;
  Potential(double g2, double lam) : g_squared(g2), lambda(lam) {
    if (!(g_squared >= 0.0) || !(lambda >= 0.0) || !std::isfinite(g_squared) || !std::isfinite(lambda))
      throw std::invalid_argument("Potential: coefficients must be finite and non-negative");
    if (g_squared == 0.0 && lambda == 0.0)
      throw std::invalid_argument("Potential: g^2 and lambda both zero admit no bound states");
  }

  PotentialKind kind() const noexcept {
    if (lambda == 0.0) return PotentialKind::Quadratic;
    if (g_squared == 0.0) return PotentialKind::PureQuartic;
    return PotentialKind::Anharmonic;
  }

  Polynomial as_polynomial() const { return Polynomial{0.0, 0.0, 0.5 * g_squared, 0.0, lambda}; }

  double operator()(double x) const noexcept { return 0.5 * g_squared * x * x + lambda * x * x * x * x; }

  friend bool operator==(const Potential&, const Potential&) = default;
};

enum class Family { Howf, Ppewf };

inline std::string_view to_string(Family f) { return f == Family::Howf ? "howf" : "ppewf"; }

/// Harmonic-oscillator eigenfunction of level n with length scale alpha.
struct HowfParams {
  int n = 0;
  double alpha = 1.0;
  friend bool operator==(const HowfParams&, const HowfParams&) = default;
};

/// x^n exp(-alpha_prime x^2) (1 - a x + b x^2 - c x^3 + d x^4).
struct PpewfParams {
  int n = 0;
  double alpha_prime = 0.5;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  friend bool operator==(const PpewfParams&, const PpewfParams&) = default;
};

using TrialParams = std::variant<HowfParams, PpewfParams>;

inline Family family_of(const TrialParams& p) {
  return std::holds_alternative<HowfParams>(p) ? Family::Howf : Family::Ppewf;
}

inline int level_of(const TrialParams& p) {
  return std::visit([](const auto& q) { return q.n; }, p);
}

inline void validate(const HowfParams& p) {
  if (p.n < 0) throw std::invalid_argument("HOWF: level must be non-negative");
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
    throw std::invalid_argument("HOWF: alpha must be positive, got " + std::to_string(p.alpha));
}

inline void validate(const PpewfParams& p) {
  if (p.n < 0) throw std::invalid_argument("PPEWF: level must be non-negative");
  if (!(p.alpha_prime > 0.0) || !std::isfinite(p.alpha_prime))
    throw std::invalid_argument("PPEWF: alpha' must be positive, got " + std::to_string(p.alpha_prime));
  // the constant term is fixed at 1, so the polynomial factor never vanishes identically
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) || !std::isfinite(p.d))
    throw std::invalid_argument("PPEWF: polynomial coefficients must be finite");
}

inline GaussPoly build_trial(const HowfParams& p) {
  validate(p);
  double factorial = 1.0;
  for (int k = 2; k <= p.n; ++k) factorial *= k;
  const double norm = 1.0 / std::sqrt(std::sqrt(std::numbers::pi) * std::ldexp(1.0, p.n) * factorial * p.alpha);
  return GaussPoly(hermite(p.n).rescaled(1.0 / p.alpha) * norm, 1.0 / (2.0 * p.alpha * p.alpha));
}

inline GaussPoly build_trial(const PpewfParams& p) {
  validate(p);
  Polynomial body{1.0, -p.a, p.b, -p.c, p.d};
  return GaussPoly(Polynomial::monomial(static_cast<std::size_t>(p.n)) * body, p.alpha_prime);
}

inline GaussPoly build_trial(const TrialParams& params) {
  return std::visit([](const auto& p) { return build_trial(p); }, params);
}

/// The three brackets of the Rayleigh quotient.
struct EnergyParts {
  double overlap = 0.0;  // <psi|psi>
  double kinetic = 0.0;  // (1/2) integral of (psi')^2
  double potential = 0.0;  // <psi|V|psi>

  double energy() const noexcept { return (kinetic + potential) / overlap; }
};

inline EnergyParts energy_parts(const GaussPoly& psi, const Potential& pot) {
  const GaussPoly dpsi = psi.derivative();
  EnergyParts parts;
  parts.overlap = inner_product(psi, psi);
  parts.kinetic = 0.5 * inner_product(dpsi, dpsi);
  parts.potential = inner_product(psi, pot.as_polynomial(), psi);
  return parts;
}

inline double rayleigh_quotient(const GaussPoly& psi, const Potential& pot) {
  const EnergyParts parts = energy_parts(psi, pot);
  if (!(parts.overlap > 1e-300))
    throw std::domain_error("rayleigh_quotient: degenerate trial function (norm " +
                            std::to_string(parts.overlap) + ")");
  return parts.energy();
}

inline double rayleigh_quotient(const TrialParams& params, const Potential& pot) {
  return rayleigh_quotient(build_trial(params), pot);
}

/// +1 even, -1 odd, 0 mixed parity of the trial function.
inline int parity(const TrialParams& params) {
  const GaussPoly psi = build_trial(params);
  bool has_even = false, has_odd = false;
  for (std::size_t k = 0; k < psi.poly.size(); ++k)
    if (psi.poly[k] != 0.0) (k % 2 == 0 ? has_even : has_odd) = true;
  if (has_even && has_odd) return 0;
  return has_odd ? -1 : 1;
}

}  // namespace qao
