#pragma once

// Combinatorics of the symmetric subspace: partitions, multinomial and
// angular-momentum weights, energy convolutions and their Gaussian limits.
// Every probability is carried as a natural logarithm until the last step.

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace clonekit {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Occupation numbers (n_0, ..., n_{d-1}) labelling |N, n> in the symmetric subspace.
struct Partition {
  std::vector<int> counts;

  int levels() const { return static_cast<int>(counts.size()); }
  int total() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;
};

Partition operator+(const Partition& a, const Partition& b);
Partition operator-(const Partition& a, const Partition& b);
bool is_valid(const Partition& p);

// Half-integer angular momentum stored as 2j.
struct TwiceJ {
  int value = 0;

  double j() const { return 0.5 * value; }
  int dimension() const { return value + 1; }

  auto operator<=>(const TwiceJ&) const = default;
};

using Energy = long long;

// Discrete probability distribution over `Label`, held in log-space.
template <class Label>
struct WeightedDistribution {
  std::vector<Label> support;
  std::vector<double> log_weights;

  std::size_t size() const { return support.size(); }
  double probability(std::size_t i) const;
  double log_total() const;
};

// Stable log(sum exp(x_i)); compensated summation of the shifted exponentials.
double log_sum_exp(std::span<const double> values);
double log_add_exp(double a, double b);

double log_factorial(int n);
double log_binomial(int n, int k);

inline constexpr std::size_t kDefaultPartitionCap = 10'000'000;

// All partitions of N into d parts, lexicographically descending.
std::vector<Partition> enumerate_partitions(int copies, int levels,
                                            std::size_t cap = kDefaultPartitionCap);

// Exact count C(N + d - 1, d - 1); throws CapExceeded past 2^64.
std::uint64_t symmetric_dimension(int copies, int levels);

double log_multinomial_weight(int copies, std::span<const double> probs, const Partition& n);
double multinomial_weight(int copies, std::span<const double> probs, const Partition& n);

// Multivariate Gaussian limit of the multinomial over the free coordinates
// x_j = n_j - N p_j (j >= 1) with A_jk = delta_jk / p_j + 1 / p_0.
class MultinomialGaussian {
public:
  MultinomialGaussian(int copies, std::span<const double> probs);

  double density(const Partition& n) const;
  double peak() const { return normalization_; }
  const Eigen::MatrixXd& precision() const { return precision_; }
  const Eigen::VectorXd& mean() const { return mean_; }

private:
  int copies_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd precision_;
  double normalization_;
};

double gaussian_multinomial(int copies, std::span<const double> probs, const Partition& n);

// Angular-momentum ladder j_min, j_min + 1, ..., N/2 of N spin-1/2 systems.
std::vector<TwiceJ> j_ladder(int copies);
bool on_ladder(int copies, TwiceJ j);

double log_angular_weight(int copies, TwiceJ j);
double angular_weight(int copies, TwiceJ j);
double angular_gaussian(int copies, TwiceJ j);

// N-fold convolution of the single-copy energy distribution, ascending in E.
WeightedDistribution<Energy> energy_distribution(std::span<const Energy> spectrum,
                                                 std::span<const double> probs,
                                                 int copies);

// Gaussian g_{N, E - N mu} with per-copy variance.
double energy_gaussian(int copies, double mean, double variance, Energy energy);

struct PartitionHash {
  std::size_t operator()(const Partition& n) const noexcept;
};

// Hash lookup of a partition's position in an enumeration.
class PartitionIndex {
public:
  explicit PartitionIndex(std::span<const Partition> partitions);

  // Position of `n`, or -1 when absent.
  std::ptrdiff_t find(const Partition& n) const;

private:
  std::unordered_map<Partition, std::ptrdiff_t, PartitionHash> positions_;
};

// Validates a probability vector: non-empty, entries > 0, sum 1 within tol.
void validate_probabilities(std::span<const double> probs, double tol = 1e-10);

template <class Label>
double WeightedDistribution<Label>::probability(std::size_t i) const {
  return std::exp(log_weights.at(i));
}

template <class Label>
double WeightedDistribution<Label>::log_total() const {
  return log_sum_exp(log_weights);
}

}  // namespace clonekit
