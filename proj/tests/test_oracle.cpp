#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qao/oracle.hpp"
#include "qao/reference_data.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using qao::Potential;
using qao::SymmetricMatrix;

TEST_CASE("SymmetricMatrix mirrors writes") {
  SymmetricMatrix m(3);
  m.set(0, 2, 4.0);
  m.add(2, 0, 1.0);
  CHECK(m(0, 2) == 5.0);
  CHECK(m(2, 0) == 5.0);
  CHECK_THAT(m.frobenius_norm(), WithinRel(std::sqrt(50.0), 1e-15));
  const SymmetricMatrix r = m.restricted({0, 2});
  CHECK(r.dimension() == 2);
  CHECK(r(0, 1) == 5.0);
}

TEST_CASE("harmonic Hamiltonian is diagonal") {
  const SymmetricMatrix h = qao::build_hamiltonian(Potential(1, 0), 20, 1.0);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) CHECK(h(i, j) == (i == j ? i + 0.5 : 0.0));
}

TEST_CASE("two-state Hamiltonian at lambda = 1") {
  // <0|x^4|0> truncated to {|0>,|1>} is (1/2)^2; <1|x^4|1> is (3/2)^2
  const SymmetricMatrix h = qao::build_hamiltonian(Potential(1, 1), 2, 1.0);
  CHECK_THAT(h(0, 0), WithinRel(0.75, 1e-15));
  CHECK_THAT(h(1, 1), WithinRel(3.75, 1e-15));
  CHECK(h(0, 1) == 0.0);
}

TEST_CASE("four-state Hamiltonian by hand") {
  // x^2 = [[1/2,0,r2/2,0],[0,3/2,0,r6/2],[r2/2,0,5/2,0],[0,r6/2,0,7/2]], x^4 = (x^2)^2
  const SymmetricMatrix h = qao::build_hamiltonian(Potential(0, 1), 4, 1.0);
  // p^2/2 has diagonal (2i+1)/4 and off-diagonal -sqrt((i+1)(i+2))/4
  CHECK_THAT(h(0, 0), WithinRel(0.25 + 0.75, 1e-14));
  CHECK_THAT(h(2, 2), WithinRel(1.25 + 6.75, 1e-14));
  CHECK_THAT(h(0, 2), WithinRel(-std::sqrt(2.0) / 4 + 3.0 / std::sqrt(2.0), 1e-14));
  CHECK_THAT(h(1, 3), WithinRel(-std::sqrt(6.0) / 4 + std::sqrt(6.0) / 2 * 5.0, 1e-14));
  CHECK(h(0, 1) == 0.0);
  CHECK(h(0, 3) == 0.0);
}

TEST_CASE("build_hamiltonian rejects bad arguments") {
  CHECK_THROWS_AS(qao::build_hamiltonian(Potential(1, 1), 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(qao::build_hamiltonian(Potential(1, 1), 8, 0.0), std::invalid_argument);
}

TEST_CASE("small bases are not nested once x^4 is truncated") {
  // (X^2)^2 drops terms from its last rows, so N = 8 is not a principal block of N = 16
  const Potential pot(1, 1000);
  const double w = qao::default_basis_scale(pot);
  CHECK(qao::oscillator_basis_levels(pot, 8, w)[0] < qao::oscillator_basis_levels(pot, 16, w)[0]);
}

TEST_CASE("Jacobi eigenvalue examples") {
  SymmetricMatrix a(2);
  a.set(0, 0, 2);
  a.set(1, 1, 2);
  a.set(0, 1, 1);
  const auto e = qao::eigenvalues_symmetric(a);
  CHECK_THAT(e[0], WithinAbs(1.0, 1e-14));
  CHECK_THAT(e[1], WithinAbs(3.0, 1e-14));

  SymmetricMatrix d(3);
  d.set(0, 0, 5);
  d.set(1, 1, -1);
  d.set(2, 2, 2);
  CHECK(qao::eigenvalues_symmetric(d) == std::vector<double>{-1, 2, 5});
}

TEST_CASE("Jacobi agrees with bisection on random symmetric matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    SymmetricMatrix m(6);
    std::vector<std::vector<double>> dense(6, std::vector<double>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i; j < 6; ++j) {
        const double v = qao::testing::uniform(rng, -5, 5);
        m.set(i, j, v);
        dense[i][j] = dense[j][i] = v;
      }
    const auto jacobi = qao::eigenvalues_symmetric(m);
    const auto bisect = qao::testing::eigenvalues_by_bisection(dense);
    for (std::size_t k = 0; k < 6; ++k) CHECK_THAT(jacobi[k], WithinAbs(bisect[k], 1e-10));
  }
}

TEST_CASE("exact_spectrum examples") {
  const auto harmonic = qao::exact_spectrum(Potential(1, 0), 4, 1e-10);
  for (std::size_t k = 0; k < 4; ++k) CHECK_THAT(harmonic.eigenvalues[k], WithinAbs(k + 0.5, 1e-12));

  const auto r = qao::exact_spectrum(Potential(1, 1), 2, 1e-8);
  CHECK(r.converged);
  CHECK_THAT(r.eigenvalues[0], WithinAbs(0.803771, 1e-6));
  CHECK_THAT(r.eigenvalues[1], WithinAbs(2.737893, 1e-6));

  // pure quartic x^4 ground level
  CHECK_THAT(qao::exact_spectrum(Potential(0, 1), 1, 1e-10).eigenvalues[0], WithinAbs(0.667986, 1e-6));

  CHECK_THROWS_AS(qao::exact_spectrum(Potential(1, 1), 13, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(qao::exact_spectrum(Potential(1, 1), 1, 0.0), std::invalid_argument);
}

TEST_CASE("exact_spectrum reports non-convergence") {
  qao::SpectrumOptions opt;
  opt.initial_basis = 4;
  opt.max_basis = 8;
  CHECK_THROWS_AS(qao::exact_spectrum(Potential(1, 1000), 6, 1e-12, opt), qao::SolverError);
}

TEST_CASE("oracle ground energies match the exact column") {
  for (const auto& row : qao::reference::ground_comparison) {
    INFO("lambda = " << row.lambda);
    CHECK_THAT(qao::exact_spectrum(Potential(1, row.lambda), 1, 1e-8).eigenvalues[0], WithinAbs(row.exact, 5e-4));
  }
}

TEST_CASE("converged levels are independent of the basis frequency") {
  for (double lam : {0.1, 1.0, 100.0}) {
    const Potential pot(1, lam);
    const double w0 = qao::default_basis_scale(pot);
    std::vector<double> reference;
    for (double f : {0.5, 1.0, 2.0}) {
      qao::SpectrumOptions opt;
      opt.omega = f * w0;
      const auto e = qao::exact_spectrum(pot, 4, 1e-11, opt).eigenvalues;
      if (reference.empty()) reference = e;
      for (std::size_t k = 0; k < 4; ++k) CHECK_THAT(e[k], WithinAbs(reference[k], 1e-8));
    }
  }
}

TEST_CASE("truncated levels never rise along the doubling sequence") {
  for (double lam : qao::reference::lambda_grid) {
    const Potential pot(1, lam);
    std::vector<double> previous;
    for (std::size_t n = 60; n <= 240; n *= 2) {
      const auto e = qao::oscillator_basis_levels(pot, n, qao::default_basis_scale(pot));
      if (!previous.empty())
        for (std::size_t k = 0; k < 3; ++k) CHECK(e[k] <= previous[k] + 1e-12 * std::abs(previous[k]));
      previous = e;
    }
  }
}

TEST_CASE("levels ascend and grow with lambda") {
  std::vector<double> previous;
  for (double lam : qao::reference::lambda_grid) {
    const auto e = qao::exact_spectrum(Potential(1, lam), 6, 1e-8).eigenvalues;
    for (std::size_t k = 1; k < e.size(); ++k) CHECK(e[k] > e[k - 1]);
    if (!previous.empty())
      for (std::size_t k = 0; k < e.size(); ++k) CHECK(e[k] > previous[k]);
    previous = e;
  }
}
