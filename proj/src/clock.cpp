#include "clonekit/clock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "clonekit/error.hpp"

namespace clonekit::clock {

namespace {

// Dense view of a distribution on consecutive integers starting at `origin`.
struct DenseSeries {
  Energy origin = 0;
  std::vector<double> values;

  double at(Energy e) const {
    const Energy i = e - origin;
    if (i < 0 || i >= static_cast<Energy>(values.size())) return 0.0;
    return values[static_cast<std::size_t>(i)];
  }
};

DenseSeries densify(const WeightedDistribution<Energy>& dist) {
  DenseSeries out;
  out.origin = dist.support.front();
  out.values.assign(static_cast<std::size_t>(dist.support.back() - out.origin + 1), 0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    out.values[static_cast<std::size_t>(dist.support[i] - out.origin)] = dist.probability(i);
  }
  return out;
}

// Root-amplitudes sqrt(p_{K,E} p_{M,E+E0}) of the K -> M economical cloner.
DenseSeries cloner_amplitudes(int k, int m, const Family& family) {
  const auto pk = energy_distribution(family.spectrum(), family.probs(), k);
  const auto pm = densify(energy_distribution(family.spectrum(), family.probs(), m));
  const Energy e0 = shift_e0(k, m, family);
  DenseSeries out;
  out.origin = pk.support.front();
  out.values.assign(static_cast<std::size_t>(pk.support.back() - out.origin + 1), 0.0);
  for (std::size_t i = 0; i < pk.size(); ++i) {
    const double target = pm.at(pk.support[i] + e0);
    if (target <= 0.0) {
      throw DomainError("clock: energy " + std::to_string(pk.support[i] + e0) +
                        " is not in the M-copy spectrum");
    }
    out.values[static_cast<std::size_t>(pk.support[i] - out.origin)] =
        std::exp(0.5 * (pk.log_weights[i] + std::log(target)));
  }
  return out;
}

// c(D) = sum_E a_E a_{E+D} for D = 0 .. len - 1 (the negative half is symmetric).
std::vector<double> autocorrelation(const std::vector<double>& a) {
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    double s = 0.0;
    for (std::size_t i = 0; i + shift < a.size(); ++i) s += a[i] * a[i + shift];
    out[shift] = s;
  }
  return out;
}

}  // namespace

Family::Family(std::vector<Energy> spectrum, std::vector<double> probs)
    : spectrum_(std::move(spectrum)), probs_(std::move(probs)) {
  require(spectrum_.size() >= 2, "clock family needs at least two energy levels");
  require(spectrum_.size() == probs_.size(), "clock family: spectrum/probability size mismatch");
  validate_probabilities(probs_);
  require(std::set<Energy>(spectrum_.begin(), spectrum_.end()).size() == spectrum_.size(),
          "clock family: energies must be distinct");
  for (std::size_t i = 0; i < probs_.size(); ++i) mean_ += probs_[i] * static_cast<double>(spectrum_[i]);
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double x = static_cast<double>(spectrum_[i]) - mean_;
    variance_ += probs_[i] * x * x;
  }
  require(variance_ > 0.0, "clock family: variance must be positive");
}

Energy shift_e0(int n, int m, const Family& family) {
  require(n >= 1 && m >= n, "shift_e0: need 1 <= N <= M");
  const auto sn = energy_distribution(family.spectrum(), family.probs(), n).support;
  const auto sm = energy_distribution(family.spectrum(), family.probs(), m).support;
  const double target = (m - n) * family.mean();
  Energy best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (Energy a : sm) {
    for (Energy b : sn) {
      const Energy diff = a - b;
      const double offset = static_cast<double>(diff) - target;
      const double gap = std::abs(offset);
      if (gap < best_gap - 1e-9 || (std::abs(gap - best_gap) <= 1e-9 && diff > best)) {
        best_gap = std::min(gap, best_gap);
        best = diff;
      }
    }
  }
  return best;
}

double economical_fidelity(int n, int m, const Family& family) {
  require(n >= 1 && m >= n, "economical_fidelity: need 1 <= N <= M");
  const auto amps = cloner_amplitudes(n, m, family);
  double s = 0.0;
  for (double v : amps.values) s += v;
  return s * s;
}

double success_probability(int n, const Family& family) {
  require(n >= 1, "success_probability: N must be >= 1");
  const auto dist = energy_distribution(family.spectrum(), family.probs(), n);
  std::vector<double> halves(dist.log_weights);
  for (double& v : halves) v *= 0.5;
  return std::exp(2.0 * log_sum_exp(halves));
}

double average_state_max_eigenvalue(int m, const Family& family) {
  require(m >= 1, "average_state_max_eigenvalue: M must be >= 1");
  const auto dist = energy_distribution(family.spectrum(), family.probs(), m);
  return std::exp(*std::max_element(dist.log_weights.begin(), dist.log_weights.end()));
}

double upper_bound(int n, int m, const Family& family) {
  return average_state_max_eigenvalue(m, family) * success_probability(n, family);
}

double mp_protocol_fidelity(int n, int k, int m, const Family& family) {
  require(n >= 1, "mp_protocol_fidelity: N must be >= 1");
  require(k >= 1 && k <= m, "mp_protocol_fidelity: need 1 <= K <= M");
  const auto a = densify(energy_distribution(family.spectrum(), family.probs(), n));
  std::vector<double> root_a(a.values.size());
  std::transform(a.values.begin(), a.values.end(), root_a.begin(), [](double p) { return std::sqrt(p); });
  const auto b = cloner_amplitudes(k, m, family);

  const auto alpha = autocorrelation(root_a);
  const auto beta = autocorrelation(b.values);
  const std::size_t common = std::min(alpha.size(), beta.size());
  double total = alpha[0] * beta[0];
  for (std::size_t shift = 1; shift < common; ++shift) total += 2.0 * alpha[shift] * beta[shift];
  return total;
}

double naive_ratio(int n, int m, const Family& family) {
  return mp_protocol_fidelity(n, m, m, family) / economical_fidelity(n, m, family);
}

double asymptotic_fidelity(int n, int m) {
  require(n >= 1 && m >= 1, "asymptotic_fidelity: need N, M >= 1");
  return std::sqrt(4.0 * m * n) / (m + n);
}

}  // namespace clonekit::clock
