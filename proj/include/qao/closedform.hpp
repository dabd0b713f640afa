#pragma once

// Closed-form variational energies for the harmonic-oscillator trial family,
// plus a verbatim transcription of the printed rational energy expressions for
// the polynomial x Gaussian family (n = 0..5). The latter are diagnostic only:
// they do not carry lambda or g and disagree with the Rayleigh quotient, so no
// solver path uses them.

#include <stdexcept>
#include <string>

namespace qao::closedform {

namespace detail {
inline void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("closedform: alpha must be positive, got " + std::to_string(alpha));
}
inline void require_level(int n) {
  if (n < 0) throw std::invalid_argument("closedform: level must be non-negative");
}
}  // namespace detail

/// 4 * sum_{i=0}^{n} (n - i) + 1, summed term by term.
constexpr long long quartic_coefficient_sum(int n) {
  long long s = 0;
  for (int i = 0; i <= n; ++i) s += n - i;
  return 4 * s + 1;
}

/// Same coefficient in closed form: 2n^2 + 2n + 1.
constexpr long long quartic_coefficient(int n) { return 2LL * n * n + 2LL * n + 1; }

/// HOWF energy for H = p^2/2 + x^2/2 + lambda x^4.
inline double energy_howf_qao(int n, double alpha, double lambda) {
  detail::require_level(n);
  detail::require_positive_alpha(alpha);
  const double a2 = alpha * alpha;
  const double k = 2.0 * n + 1.0;
  return k / (4.0 * a2) + k * a2 / 4.0 + 3.0 * static_cast<double>(quartic_coefficient(n)) * lambda * a2 * a2 / 4.0;
}

/// HOWF energy for H = p^2/2 + x^4/4.
inline double energy_howf_quartic(int n, double alpha) {
  detail::require_level(n);
  detail::require_positive_alpha(alpha);
  const double a2 = alpha * alpha;
  return (2.0 * n + 1.0) / (4.0 * a2) + 3.0 * static_cast<double>(quartic_coefficient(n)) * a2 * a2 / 16.0;
}

/// HOWF energy for H = p^2/2 + x^2/2.
inline double energy_howf_quadratic(int n, double alpha) {
  detail::require_level(n);
  detail::require_positive_alpha(alpha);
  const double a2 = alpha * alpha;
  return (2.0 * n + 1.0) / 4.0 * (1.0 / a2 + a2);
}

/// Printed PPEWF energy expressions, transcribed term for term.
inline double energy_ppewf_printed(int n, double al, double a, double b, double c, double d) {
  detail::require_positive_alpha(al);
  const double al2 = al * al, al3 = al2 * al, al4 = al3 * al, al5 = al4 * al;
  double num = 0.0, den = 0.0;

  // n >= 2 share one template; (prefactor, A, B, C, D, E, F) and the denominator set differ
  auto shared_numerator = [&](double pre, double ka, double kb, double kc, double kd2, double ke, double kf, double kg,
                              double off_a, double off_c) {
    return pre * (512.0 * al5 + ka * a * a * al3 * (off_a + 2.0 * al) + kb * al4 * (1.0 + b) +
                  kc * a * al2 * (off_c + 2.0 * al) * c + kd2 * d * d + ke * al3 * (4.0 * b + b * b + 2.0 * d) +
                  kf * al2 * (2.0 * b * b + c * c + 4.0 * d + 2.0 * b * d) +
                  kg * al * (2.0 * c * c + 4.0 * b * d + d * d));
  };
  auto shared_denominator = [&](double ka, double kb, double kb2, double kac, double kc2, double kd, double kbd,
                                double kd2) {
    return 16.0 * al2 *
           (4.0 * al * (4.0 * al * (4.0 * al * (ka * a * a + 4.0 * al) + kb * al * b + kb2 * b * b) + kac * a * al * c +
                        kc2 * c * c) +
            kd * al * (4.0 * al + kbd * b) * d + kd2 * d * d);
  };

  switch (n) {
    case 0:
      num = shared_numerator(1.0, 192.0, 768.0, 480.0, 10395.0, 480.0, 840.0, 1890.0, 5.0, 7.0);
      den = shared_denominator(1.0, 8.0, 3.0, 24.0, 15.0, 24.0, 5.0, 105.0);
      break;
    case 1:
      num = 3.0 * (4.0 * al *
                       (4.0 * al *
                            (32.0 * al3 + 20.0 * a * a * al * (7.0 + 2.0 * al) + 315.0 * b * b +
                             80.0 * al2 * (1.0 + b) + 70.0 * al * b * (4.0 + b)) +
                        280.0 * a * al * (9.0 + 2.0 * al) * c + 315.0 * (11.0 + 2.0 * al) * c * c) +
                   280.0 * al * (8.0 * al2 + 99.0 * b + 18.0 * al * (2.0 + b)) * d + 3465.0 * (13.0 + 2.0 * al) * d * d);
      den = shared_denominator(3.0, 24.0, 15.0, 120.0, 105.0, 120.0, 7.0, 945.0);
      break;
    case 2:
      num = shared_numerator(5.0, 448.0, 1792.0, 2016.0, 135135.0, 2016.0, 5544.0, 18018.0, 9.0, 11.0);
      den = shared_denominator(5.0, 40.0, 35.0, 280.0, 315.0, 280.0, 9.0, 3465.0);
      break;
    case 3:
      num = shared_numerator(7.0, 576.0, 2304.0, 3168.0, 328185.0, 3168.0, 10296.0, 38610.0, 11.0, 13.0);
      den = shared_denominator(7.0, 56.0, 63.0, 504.0, 693.0, 504.0, 11.0, 9009.0);
      break;
    case 4:
      num = shared_numerator(9.0, 704.0, 2816.0, 4576.0, 692835.0, 4576.0, 17160.0, 72930.0, 13.0, 15.0);
      den = shared_denominator(9.0, 72.0, 99.0, 792.0, 1287.0, 792.0, 13.0, 19305.0);
      break;
    case 5:
      num = shared_numerator(11.0, 832.0, 3328.0, 6240.0, 1322685.0, 6240.0, 26520.0, 125970.0, 15.0, 17.0);
      // printed with the innermost bracket already expanded
      den = 16.0 * al2 *
            (4.0 * al * (4.0 * al * (44.0 * a * a * al + 16.0 * al2 + 88.0 * al * b + 143.0 * b * b) +
                         1144.0 * a * al * c + 2145.0 * c * c) +
             1144.0 * al * (4.0 * al + 15.0 * b) * d + 36465.0 * d * d);
      break;
    default:
      throw std::invalid_argument("energy_ppewf_printed: printed expressions exist for n = 0..5 only");
  }
  if (den == 0.0) throw std::domain_error("energy_ppewf_printed: vanishing denominator");
  return num / den;
}

}  // namespace qao::closedform
