#include "clonekit/multiphase.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "clonekit/error.hpp"

namespace clonekit::multiphase {

namespace {

constexpr double kTieTolerance = 1e-12;

using SparseSeries = std::unordered_map<Partition, double, PartitionHash>;

Partition shifted(const Partition& n, const Partition& from, const Partition& to) {
  return n - from + to;
}

// Autocorrelation c(D) = sum_n a_n a_{n+D} of a series supported on partitions.
SparseSeries autocorrelation(const std::vector<Partition>& support, const std::vector<double>& a) {
  SparseSeries out;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      out[support[j] - support[i]] += a[i] * a[j];
    }
  }
  return out;
}

}  // namespace

Family::Family(std::vector<double> probs) : probs_(std::move(probs)) {
  validate_probabilities(probs_);
}

Partition mode_partition(int copies, const Family& family) {
  require(copies >= 0, "mode_partition: N must be >= 0");
  const auto parts = enumerate_partitions(copies, family.levels());
  std::size_t best = 0;
  double best_log = kNegInf;
  // Enumeration is lexicographically descending, so a strict improvement is
  // needed to move past an earlier (greater) tie.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double lp = log_multinomial_weight(copies, family.probs(), parts[i]);
    if (lp > best_log + kTieTolerance) {
      best_log = lp;
      best = i;
    }
  }
  return parts[best];
}

EconomicalIsometry economical_isometry(int n, int m, const Family& family) {
  require(n >= 1 && m >= n, "economical_isometry: need 1 <= N <= M");
  EconomicalIsometry iso;
  iso.input_copies = n;
  iso.output_copies = m;
  iso.input_mode = mode_partition(n, family);
  iso.output_mode = mode_partition(m, family);
  iso.inputs = enumerate_partitions(n, family.levels());
  iso.outputs.reserve(iso.inputs.size());
  for (const auto& in : iso.inputs) {
    Partition out = shifted(in, iso.input_mode, iso.output_mode);
    if (!is_valid(out)) {
      throw DomainError("economical_isometry: shifted label leaves the partitions of M=" +
                        std::to_string(m));
    }
    iso.outputs.push_back(std::move(out));
  }
  return iso;
}

double economical_fidelity(int n, int m, const Family& family) {
  const auto iso = economical_isometry(n, m, family);
  std::vector<double> terms;
  terms.reserve(iso.inputs.size());
  for (std::size_t i = 0; i < iso.inputs.size(); ++i) {
    terms.push_back(0.5 * (log_multinomial_weight(n, family.probs(), iso.inputs[i]) +
                           log_multinomial_weight(m, family.probs(), iso.outputs[i])));
  }
  return std::exp(2.0 * log_sum_exp(terms));
}

double success_probability(int n, const Family& family) {
  require(n >= 1, "success_probability: N must be >= 1");
  std::vector<double> terms;
  for (const auto& p : enumerate_partitions(n, family.levels())) {
    terms.push_back(0.5 * log_multinomial_weight(n, family.probs(), p));
  }
  return std::exp(2.0 * log_sum_exp(terms));
}

double average_state_max_eigenvalue(int m, const Family& family) {
  require(m >= 1, "average_state_max_eigenvalue: M must be >= 1");
  return multinomial_weight(m, family.probs(), mode_partition(m, family));
}

double upper_bound(int n, int m, const Family& family) {
  return average_state_max_eigenvalue(m, family) * success_probability(n, family);
}

double mp_protocol_fidelity(int n, int k, int m, const Family& family) {
  require(n >= 1, "mp_protocol_fidelity: N must be >= 1");
  require(k >= 1 && k <= m, "mp_protocol_fidelity: need 1 <= K <= M");
  const auto& probs = family.probs();
  const int d = family.levels();

  const auto in_parts = enumerate_partitions(n, d);
  std::vector<double> a;
  a.reserve(in_parts.size());
  for (const auto& p : in_parts) a.push_back(std::exp(0.5 * log_multinomial_weight(n, probs, p)));

  const auto iso = economical_isometry(k, m, family);
  std::vector<double> b;
  b.reserve(iso.inputs.size());
  for (std::size_t i = 0; i < iso.inputs.size(); ++i) {
    b.push_back(std::exp(0.5 * (log_multinomial_weight(k, probs, iso.inputs[i]) +
                                log_multinomial_weight(m, probs, iso.outputs[i]))));
  }

  const SparseSeries alpha = autocorrelation(in_parts, a);
  const PartitionIndex index(iso.inputs);
  double total = 0.0;
  for (const auto& [delta, weight] : alpha) {
    double beta = 0.0;
    for (std::size_t i = 0; i < iso.inputs.size(); ++i) {
      const auto j = index.find(iso.inputs[i] + delta);
      if (j >= 0) beta += b[i] * b[static_cast<std::size_t>(j)];
    }
    total += weight * beta;
  }
  return total;
}

double naive_ratio(int n, int m, const Family& family) {
  return mp_protocol_fidelity(n, m, m, family) / economical_fidelity(n, m, family);
}

double asymptotic_fidelity(int n, int m, int levels) {
  require(n >= 1 && m >= 1, "asymptotic_fidelity: need N, M >= 1");
  require(levels >= 1, "asymptotic_fidelity: need d >= 1");
  const double base = std::sqrt(4.0 * m * n) / (m + n);
  return std::pow(base, levels - 1);
}

}  // namespace clonekit::multiphase
