#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "doctest.h"

#include "clonekit/error.hpp"
#include "clonekit/symcomb.hpp"

using namespace clonekit;

namespace {

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

// Brute force over all d^N strings of levels.
std::map<Energy, double> brute_energy(const std::vector<Energy>& spectrum, const std::vector<double>& probs, int n) {
  std::map<Energy, double> out;
  const int d = static_cast<int>(spectrum.size());
  int total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  for (int word = 0; word < total; ++word) {
    int rest = word;
    Energy e = 0;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      e += spectrum[static_cast<std::size_t>(rest % d)];
      p *= probs[static_cast<std::size_t>(rest % d)];
      rest /= d;
    }
    out[e] += p;
  }
  return out;
}

}  // namespace

TEST_CASE("partitions enumerate lexicographically descending") {
  CHECK(enumerate_partitions(1, 2) == std::vector<Partition>{{{1, 0}}, {{0, 1}}});
  CHECK(enumerate_partitions(0, 3) == std::vector<Partition>{{{0, 0, 0}}});
  CHECK(enumerate_partitions(2, 2) == std::vector<Partition>{{{2, 0}}, {{1, 1}}, {{0, 2}}});
  for (int n = 0; n <= 7; ++n) {
    for (int d = 1; d <= 4; ++d) {
      const auto parts = enumerate_partitions(n, d);
      CHECK(parts.size() == symmetric_dimension(n, d));
      for (std::size_t i = 0; i < parts.size(); ++i) {
        CHECK(parts[i].total() == n);
        CHECK(is_valid(parts[i]));
        if (i > 0) CHECK(parts[i - 1] > parts[i]);
      }
    }
  }
}

TEST_CASE("partition cap") {
  CHECK_THROWS_AS(enumerate_partitions(100, 6, 1000), CapExceeded);
  CHECK_THROWS_AS(enumerate_partitions(-1, 2), DomainError);
  CHECK_THROWS_AS(enumerate_partitions(2, 0), DomainError);
}

TEST_CASE("symmetric dimension") {
  CHECK(symmetric_dimension(1, 2) == 2);
  CHECK(symmetric_dimension(2, 2) == 3);
  CHECK(symmetric_dimension(2, 3) == 6);
  CHECK(symmetric_dimension(10, 1) == 1);
  CHECK_THROWS_AS(symmetric_dimension(100000, 100), CapExceeded);
}

TEST_CASE("multinomial weights") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(multinomial_weight(2, half, {{1, 1}}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(multinomial_weight(2, half, {{2, 0}}) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(multinomial_weight(2, std::vector<double>{0.8, 0.2}, {{1, 1}}) == doctest::Approx(0.32).epsilon(1e-14));

  const std::vector<double> probs{0.1, 0.6, 0.3};
  for (int n = 0; n <= 20; ++n) {
    double total = 0.0;
    for (const auto& p : enumerate_partitions(n, 3)) {
      double direct = factorial(n);
      for (int j = 0; j < 3; ++j) {
        direct *= std::pow(probs[static_cast<std::size_t>(j)], p.counts[static_cast<std::size_t>(j)]) /
                  factorial(p.counts[static_cast<std::size_t>(j)]);
      }
      CHECK(multinomial_weight(n, probs, p) == doctest::Approx(direct).epsilon(1e-12));
      total += multinomial_weight(n, probs, p);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(multinomial_weight(2, std::vector<double>{1.0, 0.0}, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(multinomial_weight(2, half, {{1, 1, 0}}), DomainError);
  CHECK_THROWS_AS(multinomial_weight(3, half, {{1, 1}}), DomainError);
}

TEST_CASE("multinomial weights stay finite at large N") {
  const std::vector<double> probs{0.5, 0.5};
  const double log_peak = log_multinomial_weight(100000, probs, {{50000, 50000}});
  CHECK(std::isfinite(log_peak));
  CHECK(std::exp(log_peak) == doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * 100000))).epsilon(1e-4));
}

TEST_CASE("gaussian multinomial") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(gaussian_multinomial(100, half, {{50, 50}}) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi * 50)).epsilon(1e-12));

  const std::vector<double> probs{0.2, 0.3, 0.5};
  const MultinomialGaussian g(1000, probs);
  // det(A / 2 pi N) with A_jk = delta_jk / p_j + 1 / p_0 equals 1 / ((2 pi N)^{d-1} p_0 p_1 p_2).
  const double det = 1.0 / (std::pow(2.0 * std::numbers::pi * 1000, 2) * 0.2 * 0.3 * 0.5);
  CHECK(g.peak() == doctest::Approx(std::sqrt(det)).epsilon(1e-12));
  CHECK(g.density({{200, 300, 500}}) == doctest::Approx(g.peak()).epsilon(1e-14));

  // Bulk |x| <= 2 sigma, relative error shrinking with N.
  std::vector<double> errors;
  for (int n : {100, 400, 1600}) {
    double worst = 0.0;
    for (const auto& p : enumerate_partitions(n, 2)) {
      if (std::abs(p.counts[1] - 0.5 * n) > std::sqrt(static_cast<double>(n))) continue;
      worst = std::max(worst, std::abs(multinomial_weight(n, half, p) / gaussian_multinomial(n, half, p) - 1.0));
    }
    errors.push_back(worst);
  }
  CHECK(errors[0] < 0.15);
  CHECK(errors[1] <= errors[0]);
  CHECK(errors[2] <= errors[1]);
}

TEST_CASE("angular weights") {
  CHECK(angular_weight(1, TwiceJ{1}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(angular_weight(2, TwiceJ{0}) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(angular_weight(2, TwiceJ{2}) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(angular_weight(3, TwiceJ{1}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(angular_weight(3, TwiceJ{2}), DomainError);
  CHECK_THROWS_AS(angular_weight(3, TwiceJ{5}), DomainError);

  for (int n = 1; n <= 200; ++n) {
    double total = 0.0;
    for (TwiceJ j : j_ladder(n)) total += angular_weight(n, j);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Multiplicity via C(N, N/2 - j) - C(N, N/2 - j - 1).
  for (int n = 1; n <= 30; ++n) {
    for (TwiceJ j : j_ladder(n)) {
      const int k = (n - j.value) / 2;
      const double mult = std::exp(log_binomial(n, k)) - (k >= 1 ? std::exp(log_binomial(n, k - 1)) : 0.0);
      CHECK(angular_weight(n, j) == doctest::Approx(j.dimension() * mult / std::pow(2.0, n)).epsilon(1e-11));
    }
  }
}

TEST_CASE("angular gaussian approaches the exact weights") {
  // Bulk j <= sqrt(N); sigma_j = sqrt(N) / 2.
  double worst = 0.0;
  for (TwiceJ j : j_ladder(400)) {
    if (j.j() > 20.0) break;
    worst = std::max(worst, std::abs(angular_weight(400, j) / angular_gaussian(400, j) - 1.0));
  }
  CHECK(worst < 0.15);

  for (TwiceJ j : {TwiceJ{0}, TwiceJ{2}, TwiceJ{6}}) {
    const double r1 = angular_weight(10000, j) / angular_gaussian(10000, j);
    const double r2 = angular_weight(1000000, j) / angular_gaussian(1000000, j);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK(std::abs(r2 - 1.0) < 1e-4);
  }

  auto normalization = [](int n) {
    double total = 0.0;
    for (TwiceJ j : j_ladder(n)) total += angular_gaussian(n, j);
    return total;
  };
  // Excess over 1 is O(1 / sqrt N).
  CHECK(std::abs(normalization(1600) - 1.0) < 0.05);
  CHECK(std::abs(normalization(1600) - 1.0) < std::abs(normalization(400) - 1.0));
  CHECK((normalization(400) - 1.0) * 20.0 == doctest::Approx((normalization(1600) - 1.0) * 40.0).epsilon(0.1));
}

TEST_CASE("energy distribution") {
  const auto coin = energy_distribution(std::vector<Energy>{0, 1}, std::vector<double>{0.5, 0.5}, 2);
  REQUIRE(coin.support == std::vector<Energy>{0, 1, 2});
  CHECK(coin.probability(0) == doctest::Approx(0.25));
  CHECK(coin.probability(1) == doctest::Approx(0.5));
  CHECK(coin.probability(2) == doctest::Approx(0.25));

  const std::vector<Energy> spectrum{0, 1, 3};
  const std::vector<double> probs{0.5, 0.25, 0.25};
  const auto one = energy_distribution(spectrum, probs, 1);
  CHECK(one.support == spectrum);
  for (std::size_t i = 0; i < 3; ++i) CHECK(one.probability(i) == doctest::Approx(probs[i]).epsilon(1e-15));

  const auto two = energy_distribution(spectrum, probs, 2);
  const std::map<Energy, double> hand{{0, 0.25}, {1, 0.25}, {2, 1.0 / 16}, {3, 0.25}, {4, 0.125}, {6, 1.0 / 16}};
  REQUIRE(two.size() == hand.size());
  for (std::size_t i = 0; i < two.size(); ++i) CHECK(two.probability(i) == doctest::Approx(hand.at(two.support[i])).epsilon(1e-14));

  const std::vector<Energy> odd{-2, 1, 4};
  const std::vector<double> q{0.3, 0.3, 0.4};
  for (int n = 1; n <= 7; ++n) {
    const auto dist = energy_distribution(odd, q, n);
    const auto brute = brute_energy(odd, q, n);
    REQUIRE(dist.size() == brute.size());
    for (std::size_t i = 0; i < dist.size(); ++i) CHECK(dist.probability(i) == doctest::Approx(brute.at(dist.support[i])).epsilon(1e-12));
    CHECK(std::abs(dist.log_total()) < 1e-12);
  }

  CHECK_THROWS_AS(energy_distribution(std::vector<Energy>{}, std::vector<double>{}, 1), DomainError);
  CHECK_THROWS_AS(energy_distribution(std::vector<Energy>{1, 1}, std::vector<double>{0.5, 0.5}, 1), DomainError);
}

TEST_CASE("energy gaussian") {
  // Variance of {0,1} uniform is 1/4 per copy.
  CHECK(energy_gaussian(100, 0.5, 0.25, 50) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * 25.0)).epsilon(1e-14));
  const auto dist = energy_distribution(std::vector<Energy>{0, 1}, std::vector<double>{0.5, 0.5}, 1600);
  double worst = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (std::abs(dist.support[i] - 800.0) > 40.0) continue;
    worst = std::max(worst, std::abs(dist.probability(i) / energy_gaussian(1600, 0.5, 0.25, dist.support[i]) - 1.0));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("log-space helpers") {
  CHECK(log_sum_exp(std::vector<double>{}) == kNegInf);
  CHECK(log_sum_exp(std::vector<double>{kNegInf, kNegInf}) == kNegInf);
  CHECK(log_sum_exp(std::vector<double>{-1000.0, -1000.0}) == doctest::Approx(-1000.0 + std::log(2.0)));
  CHECK(log_add_exp(kNegInf, 3.0) == 3.0);
  CHECK(log_add_exp(std::log(0.25), std::log(0.5)) == doctest::Approx(std::log(0.75)));
  CHECK(log_binomial(5, 7) == kNegInf);
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0));
}

TEST_CASE("partition index") {
  const auto parts = enumerate_partitions(5, 3);
  const PartitionIndex index(parts);
  for (std::size_t i = 0; i < parts.size(); ++i) CHECK(index.find(parts[i]) == static_cast<std::ptrdiff_t>(i));
  CHECK(index.find({{6, 0, 0}}) == -1);
  CHECK((Partition{{2, 1}} + Partition{{0, 3}}) == Partition{{2, 4}});
  CHECK((Partition{{2, 1}} - Partition{{3, 0}}) == Partition{{-1, 1}});
  CHECK_FALSE(is_valid(Partition{{-1, 1}}));
}
