#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"

#include "clonekit/clock.hpp"
#include "clonekit/error.hpp"
#include "clonekit/multiphase.hpp"
#include "clonekit/oracle.hpp"

using namespace clonekit;

namespace {

std::set<Energy> spectrum_of(const clock::Family& fam, int copies) {
  const auto d = energy_distribution(fam.spectrum(), fam.probs(), copies);
  return {d.support.begin(), d.support.end()};
}

// Exhaustive differences; the one nearest (M - N) mu, ties upward.
Energy brute_shift(int n, int m, const clock::Family& fam) {
  const double target = (m - n) * fam.mean();
  Energy best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Energy a : spectrum_of(fam, m)) {
    for (Energy b : spectrum_of(fam, n)) {
      const double dist = std::abs(static_cast<double>(a - b) - target);
      if (dist < best_dist - 1e-9 || (std::abs(dist - best_dist) <= 1e-9 && a - b > best)) {
        best = a - b;
        best_dist = dist;
      }
    }
  }
  return best;
}

double direct_econ(int n, int m, const clock::Family& fam, Energy e0) {
  const auto dn = energy_distribution(fam.spectrum(), fam.probs(), n);
  const auto dm = energy_distribution(fam.spectrum(), fam.probs(), m);
  double sum = 0.0;
  for (std::size_t i = 0; i < dn.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) {
      if (dm.support[j] == dn.support[i] + e0) sum += std::sqrt(dn.probability(i) * dm.probability(j));
    }
  }
  return sum * sum;
}

const clock::Family kCoin({0, 1}, {0.5, 0.5});
const clock::Family kThree({0, 1, 3}, {0.3, 0.5, 0.2});
const clock::Family kTriangle({0, 1, 2}, {0.25, 0.5, 0.25});

}  // namespace

TEST_CASE("family validation") {
  CHECK_THROWS_AS(clock::Family({0}, {1.0}), DomainError);
  CHECK_THROWS_AS(clock::Family({1, 1}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(clock::Family({0, 1}, {0.4, 0.5}), DomainError);
  CHECK(kThree.mean() == doctest::Approx(1.1));
  CHECK(kThree.variance() == doctest::Approx(0.3 * 1.21 + 0.5 * 0.01 + 0.2 * 3.61));
}

TEST_CASE("energy shift") {
  CHECK(clock::shift_e0(1, 2, clock::Family({3, 5}, {0.5, 0.5})) == 5);
  CHECK(clock::shift_e0(2, 4, clock::Family({-1, 1}, {0.5, 0.5})) == 0);
  CHECK(clock::shift_e0(1, 2, kCoin) == 1);
  CHECK(clock::shift_e0(3, 3, kThree) == 0);
  for (const auto* fam : {&kCoin, &kThree, &kTriangle}) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = n; m <= 9; ++m) CHECK(clock::shift_e0(n, m, *fam) == brute_shift(n, m, *fam));
    }
  }
}

TEST_CASE("economical fidelity") {
  CHECK(clock::economical_fidelity(1, 2, kCoin) == doctest::Approx(0.7285533906).epsilon(1e-9));
  for (int n = 1; n <= 5; ++n) CHECK(clock::economical_fidelity(n, n, kThree) == doctest::Approx(1.0).epsilon(1e-13));
  // E0 = 1 for this family: (sqrt(1/16) + sqrt(3/16) + sqrt(1/16))^2.
  CHECK(clock::economical_fidelity(1, 2, kTriangle) == doctest::Approx(std::pow(0.5 + std::sqrt(3.0 / 16.0), 2)).epsilon(1e-14));
  CHECK(clock::economical_fidelity(1, 2, kTriangle) == doctest::Approx(0.870513).epsilon(1e-6));
  for (const auto* fam : {&kCoin, &kThree, &kTriangle}) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = n; m <= 12; ++m) {
        CHECK(clock::economical_fidelity(n, m, *fam) == doctest::Approx(direct_econ(n, m, *fam, brute_shift(n, m, *fam))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("economical fidelity matches the materialised channel") {
  for (const auto* fam : {&kCoin, &kThree, &kTriangle}) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = n; m <= 6; ++m) {
        const auto channel = oracle::clock_economical_channel(n, m, *fam);
        const auto family = oracle::clock_quadrature(*fam, n, m, 8 * (n + m) + 1);
        CHECK(oracle::fidelity_by_quadrature(channel, family) == doctest::Approx(clock::economical_fidelity(n, m, *fam)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("coverage failure is signalled") {
  // Sparse spectrum: N = 1 energies {0, 10}; M = 2 energies {0, 10, 20}; E0 = 10 covers both.
  const clock::Family sparse({0, 10}, {0.5, 0.5});
  CHECK_NOTHROW(clock::economical_fidelity(1, 2, sparse));
  // Mean offset 8.1 selects E0 = 9 = 10 - 1, but 0 + 9 is not an energy of two copies.
  const clock::Family gappy({0, 1, 10}, {0.1, 0.1, 0.8});
  CHECK(clock::shift_e0(1, 2, gappy) == 9);
  CHECK_THROWS_AS(clock::economical_fidelity(1, 2, gappy), DomainError);
}

TEST_CASE("success probability and bound") {
  CHECK(clock::success_probability(1, kCoin) == doctest::Approx(2.0));
  CHECK(clock::success_probability(2, kCoin) == doctest::Approx(2.9142).epsilon(1e-4));
  CHECK(clock::economical_fidelity(1, 512, kCoin) / clock::upper_bound(1, 512, kCoin) >= 0.95);
  for (const auto* fam : {&kCoin, &kThree, &kTriangle}) {
    for (int n = 1; n <= 3; ++n) {
      CHECK(clock::economical_fidelity(n, n, *fam) / clock::upper_bound(n, n, *fam) <= 1.0 + 1e-12);
      for (int m = n; m <= 64; ++m) CHECK(clock::economical_fidelity(n, m, *fam) <= clock::upper_bound(n, m, *fam) + 1e-12);
    }
  }
}

TEST_CASE("measure-and-prepare protocol") {
  CHECK(clock::mp_protocol_fidelity(1, 1, 2, kCoin) == doctest::Approx(0.5517767).epsilon(1e-7));
  CHECK(std::abs(clock::naive_ratio(1, 256, kCoin) / std::sqrt(0.5) - 1.0) < 0.03);
  const int k = static_cast<int>(std::ceil(std::pow(256.0, 2.0 / 3.0)));
  CHECK(clock::mp_protocol_fidelity(1, k, 256, kCoin) / clock::economical_fidelity(1, 256, kCoin) >= 0.9);
}

TEST_CASE("measure-and-prepare protocol matches double circle quadrature") {
  for (const auto* fam : {&kCoin, &kThree, &kTriangle}) {
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= 6; ++k) {
        for (int m = k; m <= 6; ++m) {
          CHECK(oracle::clock_mp_fidelity(n, k, m, *fam) == doctest::Approx(clock::mp_protocol_fidelity(n, k, m, *fam)).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("two-level reduction to multiphase") {
  const multiphase::Family mp({0.5, 0.5});
  for (int n = 1; n <= 4; ++n) {
    CHECK(clock::success_probability(n, kCoin) == doctest::Approx(multiphase::success_probability(n, mp)).epsilon(1e-12));
    for (int m = n; m <= 64; ++m) {
      CHECK(std::abs(clock::economical_fidelity(n, m, kCoin) - multiphase::economical_fidelity(n, m, mp)) < 1e-12);
      CHECK(std::abs(clock::upper_bound(n, m, kCoin) - multiphase::upper_bound(n, m, mp)) < 1e-12);
      CHECK(std::abs(clock::average_state_max_eigenvalue(m, kCoin) - multiphase::average_state_max_eigenvalue(m, mp)) < 1e-12);
      const int k = (m + 1) / 2;
      CHECK(std::abs(clock::mp_protocol_fidelity(n, k, m, kCoin) - multiphase::mp_protocol_fidelity(n, k, m, mp)) < 1e-12);
    }
  }
  // Non-uniform two-level families: the shift-independent quantities still agree.
  const clock::Family skew({0, 1}, {0.7, 0.3});
  const multiphase::Family mskew({0.7, 0.3});
  for (int n = 1; n <= 4; ++n) {
    for (int m = n; m <= 64; m += 3) {
      CHECK(std::abs(clock::upper_bound(n, m, skew) - multiphase::upper_bound(n, m, mskew)) < 1e-12);
      CHECK(std::abs(clock::asymptotic_fidelity(n, m) - multiphase::asymptotic_fidelity(n, m, 2)) < 1e-15);
    }
  }
}

TEST_CASE("asymptotic fidelity") {
  CHECK(clock::asymptotic_fidelity(5, 5) == doctest::Approx(1.0));
  CHECK(clock::asymptotic_fidelity(1, 1000000) < 0.01);
  for (const auto* fam : {&kCoin, &kThree}) {
    CHECK(std::abs(clock::economical_fidelity(20, 400, *fam) / clock::asymptotic_fidelity(20, 400) - 1.0) < 0.25);
  }
}
