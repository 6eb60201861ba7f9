#include "clonekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "clonekit/clock.hpp"
#include "clonekit/coherent.hpp"
#include "clonekit/entangled.hpp"
#include "clonekit/error.hpp"
#include "clonekit/finiteset.hpp"
#include "clonekit/multiphase.hpp"
#include "clonekit/oracle.hpp"
#include "clonekit/symcomb.hpp"

namespace clonekit::verify {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

template <class... T>
std::string describe(const T&... parts) {
  std::ostringstream out;
  out.precision(6);
  (out << ... << parts);
  return out.str();
}

Outcome within(double measured, double tol, const std::string& what) {
  return {measured <= tol, describe(what, " = ", measured, " (tol ", tol, ")")};
}

finiteset::StateSet random_set(int count, int dim, std::mt19937_64& rng) {
  std::vector<CVector> states;
  for (int x = 0; x < count; ++x) states.push_back(linalg::random_state(dim, rng));
  return finiteset::StateSet(std::move(states), std::vector<double>(static_cast<std::size_t>(count), 1.0 / count));
}

// ---- symcomb ----------------------------------------------------------------

Outcome distributions_normalize() {
  double worst = 0.0;
  const std::vector<double> probs{0.2, 0.5, 0.3};
  for (int n : {1, 7, 40, 200}) {
    worst = std::max(worst, std::abs(energy_distribution(std::vector<Energy>{0, 2, 5}, probs, n).log_total()));
    std::vector<double> logs;
    for (const auto& p : enumerate_partitions(n, 3)) logs.push_back(log_multinomial_weight(n, probs, p));
    worst = std::max(worst, std::abs(log_sum_exp(logs)));
  }
  return within(worst, 1e-12, "max |log total|");
}

Outcome multinomial_exact() {
  using boost::multiprecision::cpp_int;
  // probabilities 1/2, 1/3, 1/6: every weight is an exact rational.
  const std::vector<double> probs{0.5, 1.0 / 3.0, 1.0 / 6.0};
  const int denominators[] = {2, 3, 6};
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (const auto& p : enumerate_partitions(n, 3)) {
      cpp_int num = 1;
      for (int i = 2; i <= n; ++i) num *= i;
      cpp_int den = 1;
      for (int j = 0; j < 3; ++j) {
        for (int i = 2; i <= p.counts[static_cast<std::size_t>(j)]; ++i) den *= i;
        for (int i = 0; i < p.counts[static_cast<std::size_t>(j)]; ++i) den *= denominators[j];
      }
      const double exact = static_cast<double>(num) / static_cast<double>(den);
      worst = std::max(worst, std::abs(multinomial_weight(n, probs, p) / exact - 1.0));
    }
  }
  return within(worst, 1e-12, "max relative error");
}

Outcome angular_weights_sum() {
  double worst = 0.0;
  for (int n = 1; n <= 200; ++n) {
    std::vector<double> logs;
    for (TwiceJ j : j_ladder(n)) logs.push_back(log_angular_weight(n, j));
    worst = std::max(worst, std::abs(std::expm1(log_sum_exp(logs))));
  }
  return within(worst, 1e-12, "max |sum - 1|");
}

Outcome energy_semigroup() {
  const std::vector<Energy> spectrum{-1, 0, 3};
  const std::vector<double> probs{0.25, 0.45, 0.3};
  double worst = 0.0;
  for (auto [a, b] : {std::pair{1, 1}, std::pair{3, 5}, std::pair{10, 7}}) {
    const auto da = energy_distribution(spectrum, probs, a);
    const auto db = energy_distribution(spectrum, probs, b);
    const auto dab = energy_distribution(spectrum, probs, a + b);
    std::vector<double> conv(dab.size(), kNegInf);
    for (std::size_t i = 0; i < da.size(); ++i) {
      for (std::size_t k = 0; k < db.size(); ++k) {
        const auto e = da.support[i] + db.support[k];
        const auto pos = std::lower_bound(dab.support.begin(), dab.support.end(), e) - dab.support.begin();
        if (pos >= static_cast<std::ptrdiff_t>(dab.size()) || dab.support[static_cast<std::size_t>(pos)] != e) {
          return {false, describe("energy ", e, " missing from the convolved support")};
        }
        conv[static_cast<std::size_t>(pos)] = log_add_exp(conv[static_cast<std::size_t>(pos)],
                                                          da.log_weights[i] + db.log_weights[k]);
      }
    }
    for (std::size_t i = 0; i < dab.size(); ++i) {
      worst = std::max(worst, std::abs(std::exp(conv[i]) - dab.probability(i)));
    }
  }
  return within(worst, 1e-14, "max |p_{N1+N2} - p_N1 * p_N2|");
}

Outcome gaussian_convergence() {
  std::vector<double> errors;
  const std::vector<double> probs{0.5, 0.5};
  for (int n : {100, 400, 1600}) {
    const double sigma = std::sqrt(n * 0.25);
    double worst = 0.0;
    for (const auto& p : enumerate_partitions(n, 2)) {
      if (std::abs(p.counts[1] - 0.5 * n) > 2.0 * sigma) continue;
      const double exact = multinomial_weight(n, probs, p);
      worst = std::max(worst, std::abs(gaussian_multinomial(n, probs, p) / exact - 1.0));
    }
    errors.push_back(worst);
  }
  const bool ok = errors[1] <= errors[0] && errors[2] <= errors[1];
  return {ok, describe("bulk errors ", errors[0], ", ", errors[1], ", ", errors[2])};
}

// ---- finite sets ------------------------------------------------------------

Outcome gram_schmidt_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count_dist(2, 5);
  double worst_orth = 0.0;
  double worst_excess = -1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int count = count_dist(rng);
    const int dim = std::uniform_int_distribution<int>(count, 6)(rng);
    const auto set = random_set(count, dim, rng);
    const auto g = finiteset::gram_schmidt_with_bound(set);
    for (int x = 0; x < count; ++x) {
      for (int y = 0; y < count; ++y) {
        const double target = x == y ? 1.0 : 0.0;
        worst_orth = std::max(worst_orth, std::abs(g.basis[static_cast<std::size_t>(x)].dot(
                                                       g.basis[static_cast<std::size_t>(y)]) - target));
      }
      worst_excess = std::max(worst_excess, g.distances[static_cast<std::size_t>(x)] - g.bound);
    }
  }
  return {worst_orth <= 1e-10 && worst_excess <= 0.0,
          describe("orthonormality error ", worst_orth, ", max distance - bound ", worst_excess)};
}

Outcome finite_sandwich(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  double worst = -1.0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto set = random_set(2 + trial % 2, 3, rng);
    for (int m : {2, 3}) {
      const auto disc = finiteset::discrimination_success(set, 1);
      const double naive = finiteset::naive_mp_fidelity(set, disc, m);
      const double upper = std::min(1.0, finiteset::cloning_upper_bound(set, 1, m));
      const auto omega = oracle::finite_set_fidelity_operator(set, 1, m);
      const auto warm = oracle::finite_set_naive_channel(set, disc, m);
      oracle::SeesawConfig config;
      config.seed = seed;
      config.restarts = 2;
      const auto result = oracle::seesaw_optimal_fidelity(omega, set.size(), set.size(), config, {warm});
      worst = std::max({worst, naive - result.value, result.value - upper});
    }
  }
  return within(worst, 1e-6, "max sandwich violation");
}

Outcome equivalence_decay(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  const auto set = random_set(3, 3, rng);
  const auto disc = finiteset::discrimination_success(set, 1);
  std::vector<double> gaps;
  for (int m : {4, 8, 16, 32}) {
    const double upper = finiteset::cloning_upper_bound(set, 1, m);
    gaps.push_back((upper - finiteset::naive_mp_fidelity(set, disc, m)) / upper);
  }
  bool ok = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) ok = ok && gaps[i] < gaps[i - 1];
  return {ok, describe("relative gaps ", gaps[0], ", ", gaps[1], ", ", gaps[2], ", ", gaps[3])};
}

// ---- coherent ---------------------------------------------------------------

Outcome schur_identity() {
  double worst = 0.0;
  for (int m = 1; m <= 5; ++m) {
    const auto family = oracle::qubit_quadrature(0, m, m + 2, 2 * m + 2);
    const auto dim = family.front().output.size();
    CMatrix average = CMatrix::Zero(dim, dim);
    for (const auto& node : family) average += node.weight * linalg::projector(node.output);
    const double d_m = static_cast<double>(coherent::formal_dimension(coherent::Family::qudit_pure(2), m));
    worst = std::max(worst, (average - CMatrix::Identity(dim, dim) / d_m).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-10, "max |avg psi^M - P_M / d_M|");
}

Outcome dimension_ratio_monotone() {
  bool ok = true;
  for (int d : {2, 3, 5}) {
    const auto fam = coherent::Family::qudit_pure(d);
    for (int n = 1; n <= 8; ++n) {
      for (int m = n; m <= 16; ++m) {
        const double here = coherent::werner_fidelity(fam, n, m);
        ok = ok && coherent::werner_fidelity(fam, n, m + 1) <= here && coherent::werner_fidelity(fam, n + 1, m + 1) >= coherent::werner_fidelity(fam, n, m + 1);
      }
    }
  }
  return {ok, "d_N / d_M over d in {2,3,5}, N <= 8, M <= 17"};
}

Outcome harmonic_reference() {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (int m = n; m <= 30; ++m) {
      worst = std::max(worst, std::abs(coherent::harmonic_oscillator_fidelity(n, m) - static_cast<double>(n) / m));
    }
  }
  return within(worst, 0.0, "max |F - N/M|");
}

// ---- multiphase ---------------------------------------------------------------

Outcome multiphase_isometry_and_covariance(std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& probs : {std::vector<double>{0.5, 0.5}, std::vector<double>{0.2, 0.3, 0.5}}) {
    const multiphase::Family fam(probs);
    const int d = fam.levels();
    for (auto [n, m] : {std::pair{1, 2}, std::pair{2, 4}, std::pair{3, 5}}) {
      const auto channel = oracle::multiphase_economical_channel(n, m, fam);
      worst = std::max(worst, channel.trace_preservation_error());
      const auto in_parts = enumerate_partitions(n, d);
      const auto out_parts = enumerate_partitions(m, d);
      oracle::GroupSampler sampler = [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<double> theta(static_cast<std::size_t>(d), 0.0);
        for (int a = 1; a < d; ++a) theta[static_cast<std::size_t>(a)] = angle(rng);
        auto diagonal = [&](const std::vector<Partition>& parts) {
          CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(parts.size()), static_cast<Eigen::Index>(parts.size()));
          for (std::size_t i = 0; i < parts.size(); ++i) {
            double phase = 0.0;
            for (int a = 0; a < d; ++a) phase += parts[i].counts[static_cast<std::size_t>(a)] * theta[static_cast<std::size_t>(a)];
            u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = std::polar(1.0, phase);
          }
          return u;
        };
        return std::pair{diagonal(in_parts), diagonal(out_parts)};
      };
      worst = std::max(worst, oracle::covariance_check(channel, sampler, 20, seed));
    }
  }
  return within(worst, 1e-10, "max isometry / covariance error");
}

Outcome multiphase_econ_vs_oracle() {
  double worst = 0.0;
  for (const auto& probs : {std::vector<double>{0.5, 0.5}, std::vector<double>{0.7, 0.3}, std::vector<double>{0.2, 0.3, 0.5}}) {
    const multiphase::Family fam(probs);
    for (int n = 1; n <= 3; ++n) {
      for (int m = n; m <= 4; ++m) {
        const auto family = oracle::multiphase_quadrature(fam, n, m, 2 * (n + m) + 1);
        const double quad = oracle::fidelity_by_quadrature(oracle::multiphase_economical_channel(n, m, fam), family);
        worst = std::max(worst, std::abs(quad - multiphase::economical_fidelity(n, m, fam)));
      }
    }
  }
  return within(worst, 1e-10, "max |closed form - quadrature|");
}

Outcome multiphase_mp_vs_oracle() {
  double worst = 0.0;
  for (const auto& probs : {std::vector<double>{0.5, 0.5}, std::vector<double>{0.6, 0.4}, std::vector<double>{0.2, 0.3, 0.5}}) {
    const multiphase::Family fam(probs);
    for (auto [n, k, m] : {std::tuple{1, 1, 2}, std::tuple{2, 1, 3}, std::tuple{1, 2, 3}}) {
      worst = std::max(worst, std::abs(oracle::multiphase_mp_fidelity(n, k, m, fam) -
                                       multiphase::mp_protocol_fidelity(n, k, m, fam)));
    }
  }
  return within(worst, 1e-10, "max |Fourier matching - double quadrature|");
}

Outcome multiphase_bound_dominates() {
  double worst = -1.0;
  for (const auto& probs : {std::vector<double>{0.5, 0.5}, std::vector<double>{0.9, 0.1}, std::vector<double>{0.2, 0.3, 0.5}}) {
    const multiphase::Family fam(probs);
    for (int n = 1; n <= 6; ++n) {
      for (int m = n; m <= 12; m += 2) {
        const double ub = multiphase::upper_bound(n, m, fam);
        worst = std::max({worst, multiphase::economical_fidelity(n, m, fam) - ub,
                          multiphase::mp_protocol_fidelity(n, (m + 1) / 2, m, fam) - ub});
      }
    }
  }
  return within(worst, 1e-12, "max (F - bound)");
}

// ---- clock --------------------------------------------------------------------

Outcome clock_reduction() {
  const clock::Family clk({0, 1}, {0.5, 0.5});
  const multiphase::Family mp({0.5, 0.5});
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    worst = std::max(worst, std::abs(clock::success_probability(n, clk) - multiphase::success_probability(n, mp)));
    for (int m = n; m <= 64; m = m < 8 ? m + 1 : 2 * m) {
      worst = std::max({worst,
                        std::abs(clock::economical_fidelity(n, m, clk) - multiphase::economical_fidelity(n, m, mp)),
                        std::abs(clock::upper_bound(n, m, clk) - multiphase::upper_bound(n, m, mp)),
                        std::abs(clock::average_state_max_eigenvalue(m, clk) -
                                 multiphase::average_state_max_eigenvalue(m, mp)),
                        std::abs(clock::mp_protocol_fidelity(n, n, m, clk) -
                                 multiphase::mp_protocol_fidelity(n, n, m, mp))});
    }
  }
  return within(worst, 1e-12, "max |clock - multiphase|");
}

Outcome clock_partition_marginal() {
  const std::vector<Energy> spectrum{0, 1, 3};
  const std::vector<double> probs{0.3, 0.5, 0.2};
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const auto dist = energy_distribution(spectrum, probs, n);
    std::vector<double> marginal(dist.size(), 0.0);
    for (const auto& p : enumerate_partitions(n, 3)) {
      Energy e = 0;
      for (int j = 0; j < 3; ++j) e += p.counts[static_cast<std::size_t>(j)] * spectrum[static_cast<std::size_t>(j)];
      const auto pos = std::lower_bound(dist.support.begin(), dist.support.end(), e) - dist.support.begin();
      marginal[static_cast<std::size_t>(pos)] += multinomial_weight(n, probs, p);
    }
    for (std::size_t i = 0; i < dist.size(); ++i) worst = std::max(worst, std::abs(marginal[i] - dist.probability(i)));
  }
  return within(worst, 1e-14, "max |p_{N,E} - partition marginal|");
}

Outcome clock_mp_vs_oracle() {
  double worst = 0.0;
  const clock::Family fam({0, 1, 3}, {0.3, 0.5, 0.2});
  for (auto [n, k, m] : {std::tuple{1, 1, 2}, std::tuple{2, 2, 3}, std::tuple{3, 2, 6}}) {
    worst = std::max(worst, std::abs(oracle::clock_mp_fidelity(n, k, m, fam) - clock::mp_protocol_fidelity(n, k, m, fam)));
  }
  return within(worst, 1e-10, "max |autocorrelation - circle quadrature|");
}

// ---- entangled ----------------------------------------------------------------

Outcome entangled_dimension_identity() {
  bool ok = true;
  for (int n = 1; n <= 300; ++n) ok = ok && entangled::decompose(n).dimension_identity_holds();
  return {ok, "sum_j d_j m_j = 2^N for N <= 300"};
}

Outcome entangled_bicovariance(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 3);
  const CMatrix en = oracle::entangled_sector_basis(1);
  const CMatrix v = oracle::entangled_economical_isometry(1, 3);
  double worst = (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  const CMatrix w = v * en.adjoint();
  for (int trial = 0; trial < 20; ++trial) {
    // SU(2): U(2) phases differ between N and M copies.
    CMatrix g = linalg::random_unitary(2, rng);
    CMatrix h = linalg::random_unitary(2, rng);
    g /= std::sqrt(g.determinant());
    h /= std::sqrt(h.determinant());
    const CMatrix in = linalg::kron(g, h);
    const CMatrix out = linalg::kron(linalg::tensor_power(g, 3), linalg::tensor_power(h, 3));
    worst = std::max(worst, (out * w * en - w * in * en).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-10, "max isometry / bi-covariance error");
}

Outcome entangled_econ_vs_oracle() {
  double worst = 0.0;
  for (auto [n, m] : {std::pair{1, 1}, std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 4}}) {
    worst = std::max(worst, std::abs(oracle::entangled_economical_fidelity(n, m) - entangled::economical_fidelity(n, m)));
  }
  return within(worst, 1e-8, "max |closed form - Haar quadrature|");
}

Outcome entangled_universality() {
  // log F_econ against log(4MN/(M+N)^2) over M in {2,5,10,20} N.
  std::vector<double> xs, ys;
  for (int n : {16, 32, 64}) {
    for (int r : {2, 5, 10, 20}) {
      const int m = r * n;
      xs.push_back(std::log(4.0 * m * n / ((m + n) * static_cast<double>(m + n))));
      ys.push_back(std::log(entangled::economical_fidelity(n, m)));
    }
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  return {std::abs(slope - 1.5) <= 0.15, describe("slope ", slope, " vs 3/2")};
}

// ---- oracle -------------------------------------------------------------------

Outcome quadrature_doubling() {
  const multiphase::Family fam({0.2, 0.3, 0.5});
  const auto channel = oracle::multiphase_economical_channel(2, 3, fam);
  const double coarse = oracle::fidelity_by_quadrature(channel, oracle::multiphase_quadrature(fam, 2, 3, 11));
  const double fine = oracle::fidelity_by_quadrature(channel, oracle::multiphase_quadrature(fam, 2, 3, 22));
  const double ent_coarse = oracle::entangled_economical_fidelity(1, 3);
  const double ent_fine = oracle::entangled_economical_fidelity(1, 3, 12, 20);
  return within(std::max(std::abs(coarse - fine), std::abs(ent_coarse - ent_fine)), 1e-12, "max change on doubling");
}

Outcome seesaw_werner(std::uint64_t seed) {
  const auto family = oracle::qubit_quadrature(1, 2, 4, 6);
  oracle::SeesawConfig config;
  config.seed = seed;
  const auto result = oracle::seesaw_optimal_fidelity(oracle::fidelity_operator(family), 2, 3, config);
  const bool cptp = result.channel.is_cptp();
  const double quad = oracle::fidelity_by_quadrature(result.channel, family);
  const bool ok = cptp && std::abs(result.value - 2.0 / 3.0) <= 1e-6 && quad <= 2.0 / 3.0 + 1e-6;
  return {ok, describe("value ", result.value, ", certificate ", result.upper, ", cptp ", cptp)};
}

Outcome helstrom_consistency(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 4);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto set = random_set(2, 2, rng);
    const auto vectors = finiteset::span_vectors(set, 1);
    // Discrimination as a channel onto classical labels |x>.
    oracle::FamilyQuadrature family;
    for (int x = 0; x < 2; ++x) {
      family.push_back({set.priors()[static_cast<std::size_t>(x)], vectors[static_cast<std::size_t>(x)],
                        CVector::Unit(2, x)});
    }
    oracle::SeesawConfig config;
    config.seed = seed;
    config.restarts = 2;
    const auto result = oracle::seesaw_optimal_fidelity(oracle::fidelity_operator(family), 2, 2, config);
    worst = std::max(worst, std::abs(result.value - finiteset::discrimination_success(set, 1).value));
  }
  return within(worst, 1e-6, "max |seesaw - Helstrom|");
}

Outcome distance_bound(std::uint64_t seed) {
  const multiphase::Family fam({0.5, 0.5});
  oracle::DistanceConfig config;
  config.seed = seed;
  const auto result = oracle::trace_distance_econ_vs_mp(oracle::multiphase_economical_channel(1, 2, fam),
                                                        oracle::multiphase_naive_mp_channel(1, 2, fam), config);
  return {result.bound_respected(), describe("distance ", result.estimate, " vs proven bound ", result.bound_proven)};
}

}  // namespace

std::vector<CheckResult> run_all(std::uint64_t seed) {
  struct Check {
    const char* module;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Check> checks{
      {"symcomb", "distributions normalize", distributions_normalize},
      {"symcomb", "multinomial exact for N <= 20", multinomial_exact},
      {"symcomb", "angular weights sum to one", angular_weights_sum},
      {"symcomb", "energy convolution semigroup", energy_semigroup},
      {"symcomb", "gaussian bulk error non-increasing", gaussian_convergence},
      {"finiteset", "gram-schmidt orthonormal within lemma bound", [=] { return gram_schmidt_suite(seed); }},
      {"finiteset", "naive <= seesaw <= bound", [=] { return finite_sandwich(seed); }},
      {"finiteset", "equivalence gap decays in M", [=] { return equivalence_decay(seed); }},
      {"coherent", "schur identity", schur_identity},
      {"coherent", "d_N / d_M monotone", dimension_ratio_monotone},
      {"coherent", "harmonic oscillator reference", harmonic_reference},
      {"multiphase", "isometry and covariance", [=] { return multiphase_isometry_and_covariance(seed); }},
      {"multiphase", "economical fidelity vs oracle", multiphase_econ_vs_oracle},
      {"multiphase", "mp fidelity vs oracle", multiphase_mp_vs_oracle},
      {"multiphase", "upper bound dominates", multiphase_bound_dominates},
      {"clock", "two-level reduction", clock_reduction},
      {"clock", "energy marginal of partitions", clock_partition_marginal},
      {"clock", "mp fidelity vs oracle", clock_mp_vs_oracle},
      {"entangled", "dimension identity", entangled_dimension_identity},
      {"entangled", "isometry and bi-covariance", [=] { return entangled_bicovariance(seed); }},
      {"entangled", "economical fidelity vs oracle", entangled_econ_vs_oracle},
      {"entangled", "universality slope", entangled_universality},
      {"oracle", "quadrature exactness", quadrature_doubling},
      {"oracle", "seesaw on werner instance", [=] { return seesaw_werner(seed); }},
      {"oracle", "helstrom consistency", [=] { return helstrom_consistency(seed); }},
      {"oracle", "trace distance bound", [=] { return distance_bound(seed); }},
  };
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    CheckResult r{check.module, check.name, false, {}};
    try {
      const auto outcome = check.run();
      r.passed = outcome.passed;
      r.detail = outcome.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace clonekit::verify
