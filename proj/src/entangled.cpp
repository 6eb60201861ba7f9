#include "clonekit/entangled.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clonekit/error.hpp"
#include "clonekit/quadrature.hpp"

namespace clonekit::entangled {

namespace {

void require_parity(int n, int m) {
  require(n >= 1 && m >= n, "entangled: need 1 <= N <= M");
  require((m - n) % 2 == 0, "entangled: N and M must have the same parity");
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

// chi_j(tau) = sin((j + 1/2) tau) / sin(tau / 2).
double character(TwiceJ j, double tau) {
  return std::sin(0.5 * (j.value + 1) * tau) / std::sin(0.5 * tau);
}

}  // namespace

bool JDecomposition::dimension_identity_holds() const {
  BigInt total = 0;
  for (const auto& level : levels) total += level.multiplicity * level.dimension;
  return total == (BigInt(1) << copies);
}

JDecomposition decompose(int n) {
  require(n >= 1, "decompose: N must be >= 1");
  JDecomposition out;
  out.copies = n;
  for (TwiceJ j : j_ladder(n)) {
    JLevel level;
    level.j = j;
    level.dimension = j.dimension();
    // m_j = C(N, N/2 - j) - C(N, N/2 - j - 1)
    const int lower = (n - j.value) / 2;
    level.multiplicity = binomial(n, lower) - binomial(n, lower - 1);
    level.weight = angular_weight(n, j);
    out.levels.push_back(std::move(level));
  }
  return out;
}

double economical_fidelity(int n, int m) {
  require_parity(n, m);
  std::vector<double> terms;
  for (TwiceJ j : j_ladder(n)) {
    terms.push_back(0.5 * (log_angular_weight(n, j) + log_angular_weight(m, j)));
  }
  return std::exp(2.0 * log_sum_exp(terms));
}

double success_probability(int n) {
  require(n >= 1, "success_probability: N must be >= 1");
  std::vector<double> terms;
  for (TwiceJ j : j_ladder(n)) {
    terms.push_back(0.5 * log_angular_weight(n, j) + std::log(static_cast<double>(j.dimension())));
  }
  return std::exp(2.0 * log_sum_exp(terms));
}

double average_state_max_eigenvalue(int m) {
  require(m >= 1, "average_state_max_eigenvalue: M must be >= 1");
  const TwiceJ jmin{m % 2};
  const double d = jmin.dimension();
  return angular_weight(m, jmin) / (d * d);
}

double upper_bound(int n, int m) {
  require_parity(n, m);
  return average_state_max_eigenvalue(m) * success_probability(n);
}

double mp_protocol_fidelity(int n, int k, int m, int nodes) {
  require(n >= 1, "mp_protocol_fidelity: N must be >= 1");
  require(k >= 1 && k <= m, "mp_protocol_fidelity: need 1 <= K <= M");
  require((m - k) % 2 == 0, "mp_protocol_fidelity: K and M must have the same parity");
  if (nodes <= 0) nodes = std::max(4 * (m + n), 64);

  std::vector<std::pair<TwiceJ, double>> input;
  for (TwiceJ j : j_ladder(n)) input.emplace_back(j, std::exp(0.5 * log_angular_weight(n, j)));
  std::vector<std::pair<TwiceJ, double>> clone;
  for (TwiceJ j : j_ladder(k)) {
    clone.emplace_back(
        j, std::exp(0.5 * (log_angular_weight(k, j) + log_angular_weight(m, j))) / j.dimension());
  }

  const auto rule = gauss_legendre(nodes, 0.0, std::numbers::pi);
  double total = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double tau = rule.nodes[q];
    double pn = 0.0;
    for (const auto& [j, c] : input) pn += c * character(j, tau);
    double f = 0.0;
    for (const auto& [j, c] : clone) f += c * character(j, tau);
    const double s = std::sin(0.5 * tau);
    total += rule.weights[q] * s * s * pn * pn * f * f;
  }
  return 2.0 / std::numbers::pi * total;
}

double naive_ratio(int n, int m) { return mp_protocol_fidelity(n, m, m) / economical_fidelity(n, m); }

double asymptotic_fidelity(int n, int m) {
  require(n >= 1 && m >= 1, "asymptotic_fidelity: need N, M >= 1");
  return std::pow(std::sqrt(4.0 * m * n) / (m + n), 3);
}

int protocol_copies(int m, double epsilon) {
  require(m >= 1, "protocol_copies: M must be >= 1");
  require(epsilon >= 0.0 && epsilon < 1.0, "protocol_copies: epsilon must lie in [0, 1)");
  int k = static_cast<int>(std::ceil(std::pow(static_cast<double>(m), 1.0 - epsilon) - 1e-9));
  k = std::clamp(k, 1, m);
  if ((m - k) % 2 != 0) ++k;
  return std::min(k, m);
}

}  // namespace clonekit::entangled
