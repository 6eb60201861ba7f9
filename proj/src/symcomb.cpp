#include "clonekit/symcomb.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "clonekit/error.hpp"

namespace clonekit {

namespace {

double lgamma_safe(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void require_same_levels(const Partition& a, const Partition& b) {
  require(a.levels() == b.levels(), "partition level count mismatch");
}

}  // namespace

int Partition::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

Partition operator+(const Partition& a, const Partition& b) {
  require_same_levels(a, b);
  Partition out = a;
  for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += b.counts[i];
  return out;
}

Partition operator-(const Partition& a, const Partition& b) {
  require_same_levels(a, b);
  Partition out = a;
  for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] -= b.counts[i];
  return out;
}

bool is_valid(const Partition& p) {
  return !p.counts.empty() &&
         std::all_of(p.counts.begin(), p.counts.end(), [](int c) { return c >= 0; });
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return kNegInf;
  const double hi = *std::max_element(values.begin(), values.end());
  if (hi == kNegInf) return kNegInf;
  // Neumaier summation of exp(v - hi)
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double term = std::exp(v - hi);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
  }
  return hi + std::log(sum + carry);
}

double log_factorial(int n) {
  require(n >= 0, "log_factorial of a negative integer");
  return lgamma_safe(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

std::uint64_t symmetric_dimension(int copies, int levels) {
  require(copies >= 0, "symmetric_dimension: copies must be >= 0");
  require(levels >= 1, "symmetric_dimension: levels must be >= 1");
  using boost::multiprecision::cpp_int;
  // C(N + d - 1, d - 1) built incrementally; every prefix is itself a binomial.
  cpp_int value = 1;
  for (int i = 1; i < levels; ++i) {
    value *= copies + i;
    value /= i;
  }
  if (value > std::numeric_limits<std::uint64_t>::max()) {
    throw CapExceeded("symmetric_dimension(" + std::to_string(copies) + ", " +
                      std::to_string(levels) + ") exceeds 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

std::vector<Partition> enumerate_partitions(int copies, int levels, std::size_t cap) {
  require(copies >= 0, "enumerate_partitions: copies must be >= 0");
  require(levels >= 1, "enumerate_partitions: levels must be >= 1");
  std::uint64_t count = 0;
  try {
    count = symmetric_dimension(copies, levels);
  } catch (const CapExceeded&) {
    count = std::numeric_limits<std::uint64_t>::max();
  }
  if (count > cap) {
    throw CapExceeded("enumerate_partitions: " + std::to_string(count) +
                      " partitions exceed the cap of " + std::to_string(cap));
  }

  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(count));
  Partition current{std::vector<int>(static_cast<std::size_t>(levels), 0)};
  current.counts[0] = copies;
  // Successive partitions in descending lexicographic order: find the last
  // non-final position with a positive count, move one unit right and pile
  // the whole tail onto the next slot.
  while (true) {
    out.push_back(current);
    int pivot = levels - 2;
    while (pivot >= 0 && current.counts[static_cast<std::size_t>(pivot)] == 0) --pivot;
    if (pivot < 0) break;
    int tail = 0;
    for (int i = pivot + 1; i < levels; ++i) {
      tail += current.counts[static_cast<std::size_t>(i)];
      current.counts[static_cast<std::size_t>(i)] = 0;
    }
    current.counts[static_cast<std::size_t>(pivot)] -= 1;
    current.counts[static_cast<std::size_t>(pivot + 1)] = tail + 1;
  }
  return out;
}

void validate_probabilities(std::span<const double> probs, double tol) {
  require(!probs.empty(), "probability vector is empty");
  double total = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p > 0.0, "probabilities must be strictly positive");
    total += p;
  }
  require(std::abs(total - 1.0) <= tol, "probabilities must sum to 1");
}

double log_multinomial_weight(int copies, std::span<const double> probs, const Partition& n) {
  require(n.levels() == static_cast<int>(probs.size()),
          "multinomial_weight: partition and probability dimensions differ");
  require(is_valid(n), "multinomial_weight: negative occupation number");
  require(n.total() == copies, "multinomial_weight: partition does not sum to N");
  double value = log_factorial(copies);
  for (std::size_t j = 0; j < probs.size(); ++j) {
    require(probs[j] > 0.0, "multinomial_weight: zero probability");
    value -= log_factorial(n.counts[j]);
    value += n.counts[j] * std::log(probs[j]);
  }
  return value;
}

double multinomial_weight(int copies, std::span<const double> probs, const Partition& n) {
  return std::exp(log_multinomial_weight(copies, probs, n));
}

MultinomialGaussian::MultinomialGaussian(int copies, std::span<const double> probs)
    : copies_(copies) {
  require(copies >= 1, "gaussian_multinomial: N must be >= 1");
  validate_probabilities(probs);
  const auto free = static_cast<Eigen::Index>(probs.size()) - 1;
  mean_.resize(free);
  precision_.resize(free, free);
  for (Eigen::Index j = 0; j < free; ++j) {
    mean_(j) = copies * probs[static_cast<std::size_t>(j + 1)];
    for (Eigen::Index k = 0; k < free; ++k) {
      precision_(j, k) = 1.0 / probs[0] + (j == k ? 1.0 / probs[static_cast<std::size_t>(j + 1)] : 0.0);
    }
  }
  const double det =
      free == 0 ? 1.0 : (precision_ / (2.0 * std::numbers::pi * copies)).determinant();
  normalization_ = std::sqrt(det);
}

double MultinomialGaussian::density(const Partition& n) const {
  require(n.levels() == mean_.size() + 1, "gaussian_multinomial: dimension mismatch");
  Eigen::VectorXd x(mean_.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    x(j) = n.counts[static_cast<std::size_t>(j + 1)] - mean_(j);
  }
  const double quad = x.size() == 0 ? 0.0 : x.dot(precision_ * x);
  return normalization_ * std::exp(-quad / (2.0 * copies_));
}

double gaussian_multinomial(int copies, std::span<const double> probs, const Partition& n) {
  return MultinomialGaussian(copies, probs).density(n);
}

std::vector<TwiceJ> j_ladder(int copies) {
  require(copies >= 1, "j_ladder: N must be >= 1");
  std::vector<TwiceJ> out;
  for (int twice = copies % 2; twice <= copies; twice += 2) out.push_back(TwiceJ{twice});
  return out;
}

bool on_ladder(int copies, TwiceJ j) {
  return copies >= 1 && j.value >= 0 && j.value <= copies && (j.value - copies) % 2 == 0;
}

double log_angular_weight(int copies, TwiceJ j) {
  require(on_ladder(copies, j), "angular_weight: j is not on the ladder of N copies");
  const int dim = j.dimension();
  // p_{N,j} = d_j m_j / 2^N,  m_j = 2 d_j / (N + d_j + 1) * C(N, N/2 + j)
  return std::log(static_cast<double>(dim)) + std::log(2.0 * dim) -
         std::log(static_cast<double>(copies + dim + 1)) +
         log_binomial(copies, (copies + j.value) / 2) - copies * std::numbers::ln2;
}

double angular_weight(int copies, TwiceJ j) { return std::exp(log_angular_weight(copies, j)); }

double angular_gaussian(int copies, TwiceJ j) {
  require(copies >= 1, "angular_gaussian: N must be >= 1");
  const double n = copies;
  const double jj = j.j();
  return std::sqrt(2.0 / (std::numbers::pi * n * n * n)) * 2.0 * (2.0 * jj + 1.0) *
         (2.0 * jj + 1.0) * std::exp(-2.0 * jj * jj / n);
}

WeightedDistribution<Energy> energy_distribution(std::span<const Energy> spectrum,
                                                 std::span<const double> probs, int copies) {
  require(!spectrum.empty(), "energy_distribution: empty spectrum");
  require(spectrum.size() == probs.size(), "energy_distribution: spectrum/probability size mismatch");
  require(copies >= 0, "energy_distribution: N must be >= 0");
  validate_probabilities(probs);
  {
    std::set<Energy> distinct(spectrum.begin(), spectrum.end());
    require(distinct.size() == spectrum.size(), "energy_distribution: spectrum entries must be distinct");
  }
  const Energy lo = *std::min_element(spectrum.begin(), spectrum.end());
  const Energy hi = *std::max_element(spectrum.begin(), spectrum.end());
  const Energy width = hi - lo;

  std::vector<double> log_p(probs.size());
  std::transform(probs.begin(), probs.end(), log_p.begin(), [](double p) { return std::log(p); });

  // Offsets relative to k * lo after k convolutions.
  std::vector<double> current{0.0};
  for (int k = 0; k < copies; ++k) {
    std::vector<double> next(current.size() + static_cast<std::size_t>(width), kNegInf);
    for (std::size_t e = 0; e < current.size(); ++e) {
      if (current[e] == kNegInf) continue;
      for (std::size_t s = 0; s < spectrum.size(); ++s) {
        const auto slot = e + static_cast<std::size_t>(spectrum[s] - lo);
        next[slot] = log_add_exp(next[slot], current[e] + log_p[s]);
      }
    }
    current = std::move(next);
  }

  WeightedDistribution<Energy> out;
  for (std::size_t e = 0; e < current.size(); ++e) {
    if (current[e] == kNegInf) continue;
    out.support.push_back(static_cast<Energy>(copies) * lo + static_cast<Energy>(e));
    out.log_weights.push_back(current[e]);
  }
  return out;
}

double energy_gaussian(int copies, double mean, double variance, Energy energy) {
  require(copies >= 1, "energy_gaussian: N must be >= 1");
  require(variance > 0.0, "energy_gaussian: variance must be positive");
  const double spread = variance * copies;
  const double x = static_cast<double>(energy) - copies * mean;
  return std::exp(-x * x / (2.0 * spread)) / std::sqrt(2.0 * std::numbers::pi * spread);
}

std::size_t PartitionHash::operator()(const Partition& n) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int c : n.counts) {
    h ^= std::hash<int>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

PartitionIndex::PartitionIndex(std::span<const Partition> partitions) {
  positions_.reserve(partitions.size());
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    positions_.emplace(partitions[i], static_cast<std::ptrdiff_t>(i));
  }
}

std::ptrdiff_t PartitionIndex::find(const Partition& n) const {
  const auto it = positions_.find(n);
  return it == positions_.end() ? -1 : it->second;
}

}  // namespace clonekit
