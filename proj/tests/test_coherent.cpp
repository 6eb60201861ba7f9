#include <cmath>
#include <random>

#include "doctest.h"

#include "clonekit/coherent.hpp"
#include "clonekit/error.hpp"
#include "clonekit/oracle.hpp"

using namespace clonekit;
using namespace clonekit::coherent;

namespace {

// U^{(x) N} restricted to the symmetric subspace.
CMatrix symmetric_action(const CMatrix& u, int copies) {
  const RMatrix s = oracle::symmetric_basis(copies, static_cast<int>(u.rows()));
  return s.transpose().cast<cplx>() * linalg::tensor_power(u, copies) * s.cast<cplx>();
}

}  // namespace

TEST_CASE("formal dimension") {
  CHECK(formal_dimension(Family::qudit_pure(2), 3) == 4);
  CHECK(formal_dimension(Family::qudit_pure(3), 2) == 6);
  CHECK(formal_dimension(Family::qudit_pure(2), 1) == 2);
  CHECK(formal_dimension(Family::harmonic_oscillator(), 7) == 7);
  CHECK_THROWS_AS(Family::qudit_pure(1), DomainError);
  CHECK_THROWS_AS(formal_dimension(Family::qudit_pure(2), 0), DomainError);
}

TEST_CASE("werner fidelity") {
  CHECK(werner_fidelity_exact(Family::qudit_pure(2), 1, 2) == Rational{2, 3});
  CHECK(werner_fidelity(Family::qudit_pure(2), 1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (int n = 1; n <= 6; ++n) CHECK(werner_fidelity(Family::qudit_pure(2), n, n) == 1.0);
  CHECK(werner_fidelity(Family::qudit_pure(3), 2, 4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(werner_fidelity(Family::qudit_pure(2), 3, 2), DomainError);

  for (int d : {2, 3, 4}) {
    for (int n = 1; n <= 6; ++n) {
      for (int m = n; m <= 12; ++m) {
        const auto f = werner_fidelity(Family::qudit_pure(d), n, m);
        CHECK(werner_fidelity(Family::qudit_pure(d), n, m + 1) <= f);
        CHECK(werner_fidelity(Family::qudit_pure(d), n + 1, m + 1) >= werner_fidelity(Family::qudit_pure(d), n, m + 1));
      }
    }
  }
}

TEST_CASE("werner cloner output") {
  const auto fam = Family::qudit_pure(2);
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  const CMatrix out = werner_cloner_apply(fam, 1, 2, rho);
  CHECK(out.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(linalg::min_eigenvalue(linalg::hermitian_part(out)) >= -1e-12);

  std::mt19937_64 rng(4);
  for (int n = 1; n <= 3; ++n) {
    const CVector psi = linalg::random_state(static_cast<int>(symmetric_dimension(n, 2)), rng);
    const CMatrix r = linalg::projector(psi);
    CHECK((werner_cloner_apply(fam, n, n, r) - r).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("werner cloner agrees with the explicit projector construction") {
  std::mt19937_64 rng(9);
  for (int d : {2, 3}) {
    for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}, std::pair{2, 4}}) {
      if (d == 3 && m > 3) continue;
      const auto channel = oracle::werner_channel(n, m, d);
      CHECK(channel.is_cptp());
      const int dim = static_cast<int>(symmetric_dimension(n, d));
      for (int trial = 0; trial < 3; ++trial) {
        const CMatrix rho = linalg::projector(linalg::random_state(dim, rng));
        CHECK((channel.apply(rho) - werner_cloner_apply(Family::qudit_pure(d), n, m, rho)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("werner cloner is covariant with g-independent fidelity") {
  const auto fam = Family::qudit_pure(2);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix u = linalg::random_unitary(2, rng);
    const CVector psi = u.col(0);
    const CVector in = oracle::symmetric_power(psi, 2);
    const CVector target = oracle::symmetric_power(psi, 4);
    const CMatrix out = werner_cloner_apply(fam, 2, 4, linalg::projector(in));
    CHECK(target.dot(out * target).real() == doctest::Approx(3.0 / 5.0).epsilon(1e-10));

    const CMatrix rho = linalg::projector(linalg::random_state(3, rng));
    const CMatrix u_in = symmetric_action(u, 2);
    const CMatrix u_out = symmetric_action(u, 4);
    const CMatrix lhs = u_out * werner_cloner_apply(fam, 2, 4, rho) * u_out.adjoint();
    const CMatrix rhs = werner_cloner_apply(fam, 2, 4, u_in * rho * u_in.adjoint());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("naive and epsilon measure-and-prepare bounds") {
  const auto fam = Family::qudit_pure(2);
  CHECK(naive_mp_worstcase(fam, 1, 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(naive_mp_worstcase(fam, 1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mp_epsilon_bound(fam, 1, 2) == doctest::Approx(2.0 * std::sqrt(1.0 / 6.0) * 0.5 / 3.0).epsilon(1e-14));
  CHECK(mp_epsilon_bound(fam, 1, 2) == doctest::Approx(0.1361).epsilon(1e-3));
  for (int n = 1; n <= 3; ++n) {
    for (int m = n; m <= 64; ++m) {
      CHECK(naive_mp_worstcase(fam, n, m) <= werner_fidelity(fam, n, m));
      if (m > n) CHECK(mp_epsilon_bound(fam, n, m) <= naive_mp_worstcase(fam, n, m));
    }
    CHECK_THROWS_AS(mp_epsilon_bound(fam, n, n), DomainError);
  }
  CHECK(mp_epsilon_bound(fam, 1, 10000) / werner_fidelity(fam, 1, 10000) >= 0.9);

  // The naive value is a Haar moment: d_N times the average of |<0|psi>|^{2(M+N)}.
  for (int total : {2, 3, 5}) {
    double moment = 0.0;
    for (const auto& node : oracle::qubit_quadrature(1, 1, 8, 4)) moment += node.weight * std::pow(std::norm(node.input(0)), total);
    CHECK(2.0 * moment == doctest::Approx(naive_mp_worstcase(fam, 1, total - 1)).epsilon(1e-12));
  }
}

TEST_CASE("average fidelity identity") {
  for (int d : {2, 3}) {
    for (int n : {1, 2}) {
      for (int m = 2; m <= 5; ++m) {
        if (m < n) continue;
        const auto r = average_fidelity_identity(Family::qudit_pure(d), n, m);
        CHECK(r.max_eigenvalue * r.success_probability == doctest::Approx(werner_fidelity(Family::qudit_pure(d), n, m)).epsilon(1e-15));
        CHECK(r.bound == doctest::Approx(r.fidelity).epsilon(1e-15));
      }
    }
  }
  CHECK(average_fidelity_identity(Family::qudit_pure(2), 3, 3).fidelity == 1.0);
  CHECK(average_fidelity_identity(Family::qudit_pure(2), 1, 3).fidelity == doctest::Approx(0.5));
}

TEST_CASE("schur identity and maximum-likelihood completeness") {
  for (int m = 1; m <= 5; ++m) {
    const auto family = oracle::qubit_quadrature(m, m, m + 2, 2 * m + 2);
    const auto dim = family.front().input.size();
    CMatrix average = CMatrix::Zero(dim, dim);
    for (const auto& node : family) average += node.weight * linalg::projector(node.input);
    const double d_m = static_cast<double>(formal_dimension(Family::qudit_pure(2), m));
    CHECK((d_m * average - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("harmonic oscillator reference") {
  CHECK(harmonic_oscillator_fidelity(1, 2) == 0.5);
  CHECK(harmonic_oscillator_fidelity(3, 4) == 0.75);
  CHECK(werner_fidelity(Family::harmonic_oscillator(), 2, 5) == doctest::Approx(0.4));
  CHECK_THROWS_AS(harmonic_oscillator_fidelity(3, 2), DomainError);
}
