#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "clonekit/error.hpp"
#include "clonekit/finiteset.hpp"

using namespace clonekit;
using namespace clonekit::finiteset;

namespace {

CVector ket(std::initializer_list<cplx> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return v;
}

StateSet pair_with_cos(double c, double p0 = 0.5) {
  return StateSet({ket({1.0, 0.0}), ket({c, std::sqrt(1.0 - c * c)})}, {p0, 1.0 - p0});
}

StateSet random_set(int count, int dim, std::mt19937_64& rng) {
  std::vector<CVector> states;
  for (int x = 0; x < count; ++x) states.push_back(linalg::random_state(dim, rng));
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> priors;
  double total = 0.0;
  for (int x = 0; x < count; ++x) total += priors.emplace_back(u(rng));
  for (auto& p : priors) p /= total;
  return StateSet(std::move(states), std::move(priors));
}

double helstrom(double p0, double overlap_sq) {
  return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * p0 * (1.0 - p0) * overlap_sq));
}

}  // namespace

TEST_CASE("state set validation") {
  CHECK_THROWS_AS(StateSet({ket({1.0, 0.1})}, {1.0}), DomainError);
  CHECK_THROWS_AS(StateSet({ket({1.0, 0.0}), ket({0.0, 1.0})}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(StateSet({ket({1.0, 0.0}), ket({0.0, 1.0, 0.0})}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(StateSet({}, {}), DomainError);
}

TEST_CASE("pairwise max overlap") {
  CHECK(pairwise_max_overlap(pair_with_cos(0.0)) == doctest::Approx(0.0));
  CHECK(pairwise_max_overlap(pair_with_cos(0.5)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(pairwise_max_overlap(StateSet({ket({1.0, 0.0}), ket({cplx(0.0, 1.0), 0.0})}, {0.5, 0.5})), DomainError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto set = random_set(3, 4, rng);
    double brute = 0.0;
    for (int x = 0; x < 3; ++x) {
      for (int y = x + 1; y < 3; ++y) brute = std::max(brute, std::norm(set.states()[x].dot(set.states()[y])));
    }
    CHECK(pairwise_max_overlap(set) == doctest::Approx(brute).epsilon(1e-14));
  }
}

TEST_CASE("gram-schmidt matches a QR factorisation") {
  const auto ortho = gram_schmidt_with_bound(StateSet({ket({1.0, 0.0}), ket({0.0, 1.0})}, {0.5, 0.5}));
  CHECK(ortho.distances[0] == doctest::Approx(0.0));
  CHECK(ortho.distances[1] == doctest::Approx(0.0));
  CHECK((ortho.basis[1] - ket({0.0, 1.0})).norm() < 1e-14);

  const auto g = gram_schmidt_with_bound(pair_with_cos(0.5));
  CHECK(g.distances[0] == doctest::Approx(0.0));
  CHECK(g.distances[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.bound == doctest::Approx(std::sqrt(0.25 * kLemmaAlpha * kLemmaAlpha / (kLemmaAlpha - 1.0))).epsilon(1e-12));
  CHECK(g.bound == doctest::Approx(1.326).epsilon(1e-3));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int count = 2 + trial % 4;
    const auto set = random_set(count, 6, rng);
    CMatrix columns(6, count);
    for (int x = 0; x < count; ++x) columns.col(x) = set.states()[static_cast<std::size_t>(x)];
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(columns).householderQ() * CMatrix::Identity(6, count);
    const auto r = gram_schmidt_with_bound(set);
    for (int x = 0; x < count; ++x) {
      // Same vector up to a phase.
      CHECK(std::abs(q.col(x).dot(r.basis[static_cast<std::size_t>(x)])) == doctest::Approx(1.0).epsilon(1e-10));
      const CVector& psi = set.states()[static_cast<std::size_t>(x)];
      const double residual = (psi - q.col(x) * q.col(x).dot(psi)).norm();
      CHECK(r.distances[static_cast<std::size_t>(x)] == doctest::Approx(residual).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(gram_schmidt_with_bound(StateSet({ket({1.0, 0.0}), ket({0.0, 1.0}), ket({std::sqrt(0.5), std::sqrt(0.5)})},
                                                   {0.3, 0.3, 0.4})),
                  DomainError);
}

TEST_CASE("gram-schmidt never exceeds the lemma bound on nearly orthogonal sets") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    // Small perturbations of the standard basis of C^5.
    std::vector<CVector> states;
    std::normal_distribution<double> noise(0.0, 0.01);
    for (int x = 0; x < 5; ++x) {
      CVector v = CVector::Unit(5, x);
      for (int i = 0; i < 5; ++i) v(i) += cplx(noise(rng), noise(rng));
      states.push_back(v.normalized());
    }
    const StateSet set(std::move(states), std::vector<double>(5, 0.2));
    const auto r = gram_schmidt_with_bound(set);
    CHECK(r.overlap <= 1e-2);
    for (double dist : r.distances) CHECK(dist <= r.bound);
  }
}

TEST_CASE("span vectors reproduce the N-copy Gram matrix") {
  std::mt19937_64 rng(3);
  const auto set = random_set(3, 2, rng);
  for (int n : {1, 2, 5}) {
    const auto v = span_vectors(set, n);
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        const cplx direct = std::pow(set.overlap(x, y), n);
        CHECK(std::abs(v[static_cast<std::size_t>(x)].dot(v[static_cast<std::size_t>(y)]) - direct) < 1e-12);
      }
    }
  }
}

TEST_CASE("two-state discrimination is Helstrom") {
  CHECK(discrimination_success(pair_with_cos(0.0), 1).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(discrimination_success(pair_with_cos(0.5), 1).value == doctest::Approx(0.9330127019).epsilon(1e-9));
  CHECK(discrimination_success(pair_with_cos(0.5), 2).value == doctest::Approx(0.5 * (1.0 + std::sqrt(0.9375))).epsilon(1e-12));
  CHECK(discrimination_success(pair_with_cos(0.5), 2).value == doctest::Approx(0.9841).epsilon(1e-4));
  for (double p0 : {0.1, 0.3, 0.5, 0.8}) {
    for (double c : {0.2, 0.7, 0.95}) {
      for (int n : {1, 3}) {
        const auto d = discrimination_success(pair_with_cos(c, p0), n);
        CHECK(d.value == doctest::Approx(helstrom(p0, std::pow(c * c, n))).epsilon(1e-10));
        CHECK(d.gap() <= 1e-8);
      }
    }
  }
}

TEST_CASE("trine states") {
  std::vector<CVector> states;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    states.push_back(ket({std::cos(a), std::sin(a)}));
  }
  const StateSet trine(std::move(states), {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto d = discrimination_success(trine, 1);
  CHECK(d.value == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(d.upper == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("discrimination is certified and consistent with explicit tensor powers") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto set = random_set(3 + trial % 2, 3, rng);
    const auto d = discrimination_success(set, 2);
    CHECK(d.value <= d.upper + 1e-12);
    CHECK(d.gap() <= 1e-6);

    // POVM completeness on the span.
    CMatrix total = CMatrix::Zero(d.povm.front().rows(), d.povm.front().cols());
    for (const auto& e : d.povm) {
      total += e;
      CHECK(linalg::min_eigenvalue(e) >= -1e-10);
    }
    CHECK((total - CMatrix::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff() < 1e-8);

    std::vector<CVector> doubled;
    for (const auto& s : set.states()) doubled.push_back(linalg::kron(s, s));
    const StateSet explicit_set(std::move(doubled), set.priors());
    CHECK(discrimination_success(explicit_set, 1).value == doctest::Approx(d.value).epsilon(1e-7));
  }
}

TEST_CASE("worst-case discrimination") {
  // Equal priors on a symmetric pair: the worst case equals the average case.
  const auto avg = discrimination_success(pair_with_cos(0.5), 1);
  DiscriminationOptions options;
  options.worst_case = true;
  const auto worst = discrimination_success(pair_with_cos(0.5, 0.2), 1, options);
  CHECK(worst.value == doctest::Approx(avg.value).epsilon(1e-4));
  CHECK(worst.value <= worst.upper + 1e-12);
}

TEST_CASE("cloning upper bound") {
  const auto set = pair_with_cos(0.5);
  const double tail = std::sqrt(kLemmaAlpha * kLemmaAlpha * std::pow(0.25, 4) / (kLemmaAlpha - 1.0));
  CHECK(tail == doctest::Approx(0.1658).epsilon(1e-3));
  CHECK(cloning_upper_bound(set, 1, 4) == doctest::Approx(0.9330127019 + tail).epsilon(1e-9));
  CHECK(cloning_upper_bound(set, 1, 4) > 1.0);
  CHECK(cloning_upper_bound(set, 1, 50) - discrimination_success(set, 1).value < 1e-12);
  CHECK(cloning_upper_bound(pair_with_cos(0.0), 1, 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("naive measure-and-prepare fidelity") {
  CHECK(naive_mp_fidelity(pair_with_cos(0.0), 2, 5) == doctest::Approx(1.0).epsilon(1e-12));
  const auto set = pair_with_cos(0.5);
  const auto disc = discrimination_success(set, 1);
  const double f = naive_mp_fidelity(set, 1, 4);
  CHECK(f >= disc.value - 1e-12);
  CHECK(f <= 1.0);
  CHECK(naive_mp_fidelity(set, 1, 60) == doctest::Approx(disc.value).epsilon(1e-10));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_set(3, 3, rng);
    const auto d = discrimination_success(s, 1);
    for (int m : {1, 2, 7}) {
      double direct = 0.0;
      for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
          const CVector& v = d.vectors[static_cast<std::size_t>(x)];
          direct += s.priors()[x] * v.dot(d.povm[static_cast<std::size_t>(y)] * v).real() * std::pow(std::norm(s.overlap(x, y)), m);
        }
      }
      CHECK(naive_mp_fidelity(s, d, m) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(naive_mp_fidelity(s, d, m) <= std::min(1.0, cloning_upper_bound(s, 1, m)) + 1e-12);
    }
  }
}

TEST_CASE("equivalence gap decays with M") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto set = random_set(3, 3, rng);
    const auto disc = discrimination_success(set, 1);
    double previous = 2.0;
    for (int m : {4, 8, 16, 32}) {
      const double upper = cloning_upper_bound(set, 1, m);
      const double gap = (upper - naive_mp_fidelity(set, disc, m)) / upper;
      CHECK(gap < previous);
      previous = gap;
    }
  }
}
