#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qao/polygauss.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using qao::GaussPoly;
using qao::Polynomial;

namespace {

void require_coeffs(const Polynomial& p, std::initializer_list<double> expected) {
  REQUIRE(p.size() == expected.size());
  std::size_t k = 0;
  for (double e : expected) CHECK(p[k++] == e);
}

}  // namespace

TEST_CASE("poly_mul multiplies coefficient sequences") {
  require_coeffs(qao::poly_mul({1, 1}, {1, -1}), {1, 0, -1});
  require_coeffs(qao::poly_mul({1, 2}, {3}), {3, 6});
  // (1 - x + 2x^2)^2 expanded by hand
  require_coeffs(qao::poly_mul({1, -1, 2}, {1, -1, 2}), {1, -2, 5, -4, 4});
  CHECK(qao::poly_mul({}, {1, 2}).size() == 0);
}

TEST_CASE("poly_derivative") {
  require_coeffs(qao::poly_derivative({5, 3, 0, 2}), {3, 0, 6});
  CHECK(qao::poly_derivative({7}).size() == 0);
  CHECK(qao::poly_derivative({}).size() == 0);
}

TEST_CASE("Polynomial basics") {
  const Polynomial p{1, -2, 0, 3};
  CHECK(p.degree() == 3);
  CHECK(Polynomial{0, 0}.degree() == -1);
  CHECK(p(2.0) == 1 - 4 + 24);
  require_coeffs(p.rescaled(2.0), {1, -4, 0, 24});
  require_coeffs(Polynomial::monomial(2, 3.0), {0, 0, 3});
  require_coeffs(p + Polynomial{1}, {2, -2, 0, 3});
  require_coeffs(p - p, {0, 0, 0, 0});
  CHECK((p - p).is_zero());
}

TEST_CASE("gaussian_moment examples") {
  CHECK_THAT(qao::gaussian_moment(0, 1.0), WithinRel(std::sqrt(std::numbers::pi), 1e-15));
  CHECK_THAT(qao::gaussian_moment(2, 1.0), WithinRel(std::sqrt(std::numbers::pi) / 2.0, 1e-15));
  // sqrt(pi/2) * 3 / 16
  CHECK_THAT(qao::gaussian_moment(4, 2.0), WithinRel(std::sqrt(std::numbers::pi / 2.0) * 3.0 / 16.0, 1e-15));
  const double quad = qao::testing::integrate_even([](double x) { return std::pow(x, 4) * std::exp(-2.0 * x * x); });
  CHECK_THAT(qao::gaussian_moment(4, 2.0), WithinRel(quad, 1e-12));
}

TEST_CASE("gaussian_moment rejects bad input") {
  CHECK_THROWS_AS(qao::gaussian_moment(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(qao::gaussian_moment(-2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(qao::gaussian_moment(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(qao::gaussian_moment(2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(qao::gaussian_integral({1}, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian moments agree with quadrature") {
  for (double beta : {0.05, 0.3, 1.0, 4.0, 30.0}) {
    for (int k = 0; k <= 12; ++k) {
      const double quad =
          qao::testing::integrate_even([&](double x) { return std::pow(x, 2 * k) * std::exp(-beta * x * x); });
      INFO("beta = " << beta << ", 2k = " << 2 * k);
      CHECK_THAT(qao::gaussian_moment(2 * k, beta), WithinRel(quad, 1e-10));
    }
  }
}

TEST_CASE("gaussian_integral ignores odd powers") {
  const Polynomial p{1, 5, 2, -7};
  const double expected = qao::gaussian_moment(0, 0.7) + 2.0 * qao::gaussian_moment(2, 0.7);
  CHECK_THAT(qao::gaussian_integral(p, 0.7), WithinRel(expected, 1e-15));
}

TEST_CASE("hermite examples") {
  require_coeffs(qao::hermite(0), {1});
  require_coeffs(qao::hermite(1), {0, 2});
  require_coeffs(qao::hermite(2), {-2, 0, 4});
  require_coeffs(qao::hermite(4), {12, 0, -48, 0, 16});
  CHECK_THROWS_AS(qao::hermite(-1), std::invalid_argument);
}

TEST_CASE("hermite recurrence agrees with Rodrigues' formula") {
  for (int n = 0; n <= 14; ++n) {
    const Polynomial h = qao::hermite(n);
    const std::vector<double> r = qao::testing::hermite_rodrigues(n);
    REQUIRE(h.size() == r.size());
    for (std::size_t k = 0; k < r.size(); ++k) CHECK(h[k] == r[k]);
  }
}

TEST_CASE("hermite parity and orthogonality") {
  for (int n = 0; n <= 8; ++n) {
    const Polynomial h = qao::hermite(n);
    for (std::size_t k = 0; k < h.size(); ++k)
      if ((k + n) % 2 == 1) CHECK(h[k] == 0.0);
  }
  for (int m = 0; m <= 8; ++m) {
    for (int n = 0; n <= 8; ++n) {
      const double ip = qao::gaussian_integral(qao::hermite(m) * qao::hermite(n), 1.0);
      double fact = 1.0;
      for (int k = 2; k <= n; ++k) fact *= k;
      const double norm = std::sqrt(std::numbers::pi) * std::ldexp(1.0, n) * fact;
      INFO("m = " << m << ", n = " << n);
      if (m == n)
        CHECK_THAT(ip, WithinRel(norm, 1e-12));
      else
        CHECK_THAT(ip, WithinAbs(0.0, 1e-10 * norm));
    }
  }
}

TEST_CASE("product evaluates pointwise as the product of values") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> pc(1 + rng() % 7), qc(1 + rng() % 7);
    for (double& c : pc) c = qao::testing::uniform(rng, -3, 3);
    for (double& c : qc) c = qao::testing::uniform(rng, -3, 3);
    const Polynomial p(pc), q(qc);
    const Polynomial r = p * q;
    CHECK(r.size() == pc.size() + qc.size() - 1);
    for (double x : {-1.7, -0.3, 0.0, 0.9, 2.2}) {
      const double expected = p(x) * q(x);
      CHECK_THAT(r(x), WithinAbs(expected, 1e-12 * std::max(1.0, std::abs(expected)) * 100));
    }
  }
}

TEST_CASE("inner products of Gaussian polynomials") {
  // normalized oscillator ground state and its second excitation
  const double n0 = std::pow(std::numbers::pi, -0.25);
  const GaussPoly psi0(Polynomial{n0}, 0.5);
  const GaussPoly psi2(qao::hermite(2) * (n0 / std::sqrt(8.0)), 0.5);
  CHECK_THAT(qao::inner_product(psi0, psi0), WithinRel(1.0, 1e-15));
  CHECK_THAT(qao::inner_product(psi2, psi2), WithinRel(1.0, 1e-15));
  CHECK_THAT(qao::inner_product(psi0, psi2), WithinAbs(0.0, 1e-15));
  // <0|x^2|0> = 1/2 and <0|x^2|2> = 1/sqrt(2)
  const Polynomial x2{0, 0, 1};
  CHECK_THAT(qao::inner_product(psi0, x2, psi0), WithinRel(0.5, 1e-15));
  CHECK_THAT(qao::inner_product(psi0, x2, psi2), WithinRel(1.0 / std::sqrt(2.0), 1e-14));
}

TEST_CASE("inner product agrees with quadrature on random functions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> fc(1 + rng() % 6), gc(1 + rng() % 6);
    for (double& c : fc) c = qao::testing::uniform(rng, -2, 2);
    for (double& c : gc) c = qao::testing::uniform(rng, -2, 2);
    const GaussPoly f(Polynomial(fc), qao::testing::uniform(rng, 0.1, 3));
    const GaussPoly g(Polynomial(gc), qao::testing::uniform(rng, 0.1, 3));
    const double quad = qao::testing::integrate_line([&](double x) { return f(x) * g(x); });
    const double scale = qao::testing::integrate_line([&](double x) { return std::abs(f(x) * g(x)); });
    CHECK_THAT(qao::inner_product(f, g), WithinAbs(quad, 1e-10 * scale));
  }
}

TEST_CASE("GaussPoly derivative matches finite differences") {
  const GaussPoly f(Polynomial{0.5, -1, 2, 0.25}, 0.8);
  const GaussPoly df = f.derivative();
  for (double x : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
    const double h = 1e-5;
    const double fd = (f(x + h) - f(x - h)) / (2 * h);
    CHECK_THAT(df(x), WithinAbs(fd, 1e-8));
  }
  CHECK_THROWS_AS(GaussPoly(Polynomial{1}, 0.0), std::invalid_argument);
}
