#include "clonekit/finiteset.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <string>

#include "clonekit/error.hpp"
#include "clonekit/symcomb.hpp"

namespace clonekit::finiteset {

namespace {

constexpr double kDistinctTolerance = 1e-12;
constexpr double kSingularGram = 1e-10;
constexpr double kWorstCaseGap = 1e-4;
constexpr int kWorstCaseRounds = 4000;

void check_dimension_cap(const StateSet& set, int n, std::uint64_t cap) {
  double log_dim = n * std::log(static_cast<double>(set.dimension()));
  if (log_dim > std::log(static_cast<double>(cap)) + 1e-12) {
    throw CapExceeded("finiteset: d_H^N = " + std::to_string(set.dimension()) + "^" +
                      std::to_string(n) + " exceeds the dimension cap");
  }
}

// Completes a family of PSD operators summing to a projector into a POVM.
void complete_povm(std::vector<CMatrix>& povm) {
  const auto dim = povm.front().rows();
  CMatrix total = CMatrix::Zero(dim, dim);
  for (const auto& p : povm) total += p;
  povm.front() += linalg::positive_part(CMatrix::Identity(dim, dim) - total);
}

double success_of(const std::vector<CMatrix>& weighted, const std::vector<CMatrix>& povm) {
  double s = 0.0;
  for (std::size_t x = 0; x < povm.size(); ++x) s += (weighted[x] * povm[x]).trace().real();
  return s;
}

// Y = herm(sum_x A_x Pi_x) lifted to dominate every A_x.
double dual_certificate(const std::vector<CMatrix>& weighted, const std::vector<CMatrix>& povm) {
  const auto dim = weighted.front().rows();
  CMatrix y = CMatrix::Zero(dim, dim);
  for (std::size_t x = 0; x < povm.size(); ++x) y += weighted[x] * povm[x];
  y = linalg::hermitian_part(y);
  double shift = 0.0;
  for (const auto& a : weighted) shift = std::max(shift, -linalg::min_eigenvalue(y - a));
  return y.trace().real() + shift * static_cast<double>(dim);
}

Discrimination average_case(const std::vector<CVector>& vectors, const std::vector<double>& priors,
                            const DiscriminationOptions& options) {
  Discrimination out;
  out.vectors = vectors;
  const auto count = vectors.size();
  const auto dim = vectors.front().size();
  std::vector<CMatrix> weighted;
  for (std::size_t x = 0; x < count; ++x) weighted.push_back(priors[x] * linalg::projector(vectors[x]));

  if (count == 1) {
    out.povm = {CMatrix::Identity(dim, dim)};
    out.value = out.upper = priors[0] * vectors[0].squaredNorm();
    return out;
  }
  if (count == 2) {
    // Helstrom: project on the positive part of A_0 - A_1.
    const CMatrix gamma = weighted[0] - weighted[1];
    Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(gamma));
    CMatrix positive = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > 0.0) positive += linalg::projector(es.eigenvectors().col(i));
    }
    out.povm = {positive, CMatrix::Identity(dim, dim) - positive};
    out.value = 0.5 * (priors[0] + priors[1] + linalg::trace_norm(gamma));
    out.upper = std::max(out.value, dual_certificate(weighted, out.povm));
    return out;
  }

  CMatrix rho = CMatrix::Zero(dim, dim);
  for (const auto& a : weighted) rho += a;
  const CMatrix s = linalg::psd_inv_sqrt(rho);
  std::vector<CMatrix> povm;
  for (const auto& a : weighted) povm.push_back(linalg::hermitian_part(s * a * s));

  double lower = success_of(weighted, povm);
  double upper = dual_certificate(weighted, povm);
  int it = 0;
  while (upper - lower > options.tolerance && it < options.max_iterations) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (std::size_t x = 0; x < count; ++x) acc += weighted[x] * povm[x] * weighted[x];
    const CMatrix r = linalg::psd_inv_sqrt(acc);
    for (std::size_t x = 0; x < count; ++x) {
      povm[x] = linalg::hermitian_part(r * weighted[x] * povm[x] * weighted[x] * r);
    }
    lower = success_of(weighted, povm);
    upper = std::min(upper, dual_certificate(weighted, povm));
    ++it;
  }
  if (upper - lower > 1e-6) {
    throw ConvergenceError("discrimination_success: refinement did not converge", lower,
                           upper - lower);
  }
  complete_povm(povm);
  out.povm = std::move(povm);
  out.value = success_of(weighted, out.povm);
  out.upper = std::max(upper, out.value);
  out.iterations = it;
  return out;
}

std::vector<double> per_state_success(const Discrimination& d) {
  std::vector<double> s;
  for (std::size_t x = 0; x < d.vectors.size(); ++x) {
    s.push_back(d.vectors[x].dot(d.povm[x] * d.vectors[x]).real());
  }
  return s;
}

// max_Pi min_x Tr[Pi_x psi_x] = min_q max_Pi sum_x q_x Tr[Pi_x psi_x]; mirror
// descent over the prior simplex, keeping the running-average POVM.
Discrimination worst_case(const std::vector<CVector>& vectors, const DiscriminationOptions& options) {
  const auto count = vectors.size();
  std::vector<double> q(count, 1.0 / static_cast<double>(count));
  Discrimination best;
  best.value = -1.0;
  double best_upper = std::numeric_limits<double>::infinity();
  std::vector<CMatrix> average;
  for (int round = 1; round <= kWorstCaseRounds; ++round) {
    const Discrimination d = average_case(vectors, q, options);
    best_upper = std::min(best_upper, d.upper);
    if (average.empty()) {
      average = d.povm;
    } else {
      for (std::size_t x = 0; x < count; ++x) average[x] += (d.povm[x] - average[x]) / round;
    }
    for (const std::vector<CMatrix>* candidate : std::array<const std::vector<CMatrix>*, 2>{&d.povm, &average}) {
      Discrimination trial;
      trial.vectors = vectors;
      trial.povm = *candidate;
      const auto s = per_state_success(trial);
      const double worst = *std::min_element(s.begin(), s.end());
      if (worst > best.value) {
        best = std::move(trial);
        best.value = worst;
      }
    }
    best.iterations = round;
    if (best_upper - best.value < kWorstCaseGap) break;
    const auto s = per_state_success(d);
    const double step = 2.0 / std::sqrt(static_cast<double>(round));
    double norm = 0.0;
    for (std::size_t x = 0; x < count; ++x) {
      q[x] *= std::exp(-step * s[x]);
      norm += q[x];
    }
    for (double& v : q) v /= norm;
  }
  best.upper = std::max(best_upper, best.value);
  if (best.gap() > kWorstCaseGap) {
    throw ConvergenceError("discrimination_success: worst-case gap not closed", best.value, best.gap());
  }
  return best;
}

double log_tail(int count, double eta, int m) {
  if (eta <= 0.0) return kNegInf;
  return 0.5 * (count * std::log(kLemmaAlpha) + m * std::log(eta) - std::log(kLemmaAlpha - 1.0));
}

}  // namespace

StateSet::StateSet(std::vector<CVector> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  require(!states_.empty(), "StateSet: need at least one state");
  require(states_.size() == priors_.size(), "StateSet: states/priors size mismatch");
  validate_probabilities(priors_);
  const auto dim = states_.front().size();
  require(dim >= 1, "StateSet: empty state vector");
  for (const auto& s : states_) {
    require(s.size() == dim, "StateSet: states have different dimensions");
    require(std::abs(s.norm() - 1.0) <= 1e-12, "StateSet: states must be unit vectors");
  }
}

double pairwise_max_overlap(const StateSet& set) {
  require(set.size() >= 2, "pairwise_max_overlap: need at least two states");
  double eta = 0.0;
  for (int x = 0; x < set.size(); ++x) {
    for (int y = x + 1; y < set.size(); ++y) {
      const double o = std::norm(set.overlap(x, y));
      require(o < 1.0 - kDistinctTolerance, "pairwise_max_overlap: duplicate states");
      eta = std::max(eta, o);
    }
  }
  return eta;
}

double lemma_bound(int count, double eta) {
  return std::sqrt(std::pow(kLemmaAlpha, count) * eta / (kLemmaAlpha - 1.0));
}

GramResult gram_schmidt_with_bound(const StateSet& set) {
  const int count = set.size();
  CMatrix gram(count, count);
  for (int x = 0; x < count; ++x) {
    for (int y = 0; y < count; ++y) gram(x, y) = set.overlap(x, y);
  }
  require(linalg::min_eigenvalue(gram) > kSingularGram,
          "gram_schmidt_with_bound: states are (nearly) linearly dependent");
  GramResult out;
  out.overlap = count >= 2 ? pairwise_max_overlap(set) : 0.0;
  out.bound = lemma_bound(count, out.overlap);
  for (int x = 0; x < count; ++x) {
    const CVector& psi = set.states()[static_cast<std::size_t>(x)];
    CVector v = psi;
    // Two passes of modified Gram-Schmidt keep orthogonality at machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& g : out.basis) v -= g.dot(v) * g;
    }
    v.normalize();
    // sqrt(1 - |<psi|v>|^2) as the norm of the residual, free of cancellation near 0.
    out.distances.push_back((psi - v * v.dot(psi)).norm());
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::vector<CVector> span_vectors(const StateSet& set, int copies) {
  require(copies >= 1, "span_vectors: need at least one copy");
  const int count = set.size();
  CMatrix gram(count, count);
  for (int x = 0; x < count; ++x) {
    for (int y = 0; y < count; ++y) gram(x, y) = std::pow(set.overlap(x, y), copies);
  }
  const CMatrix root = linalg::psd_sqrt(gram);
  std::vector<CVector> out;
  for (int x = 0; x < count; ++x) out.push_back(root.col(x));
  return out;
}

Discrimination discrimination_success(const StateSet& set, int n, const DiscriminationOptions& options) {
  require(n >= 1, "discrimination_success: N must be >= 1");
  check_dimension_cap(set, n, options.dimension_cap);
  const auto vectors = span_vectors(set, n);
  if (options.worst_case && set.size() > 1) return worst_case(vectors, options);
  return average_case(vectors, set.priors(), options);
}

double cloning_upper_bound(const StateSet& set, int n, int m, const DiscriminationOptions& options) {
  require(m >= n, "cloning_upper_bound: need M >= N");
  const double p = discrimination_success(set, n, options).value;
  if (set.size() < 2) return p;
  return p + std::exp(log_tail(set.size(), pairwise_max_overlap(set), m));
}

double naive_mp_fidelity(const StateSet& set, const Discrimination& disc, int m, bool worst_case) {
  const auto count = static_cast<std::size_t>(set.size());
  std::vector<double> per_state(count, 0.0);
  for (std::size_t x = 0; x < count; ++x) {
    for (std::size_t y = 0; y < count; ++y) {
      const double guess = disc.vectors[x].dot(disc.povm[y] * disc.vectors[x]).real();
      const double copy = std::pow(std::norm(set.overlap(static_cast<int>(x), static_cast<int>(y))), m);
      per_state[x] += guess * copy;
    }
  }
  if (worst_case) return *std::min_element(per_state.begin(), per_state.end());
  double f = 0.0;
  for (std::size_t x = 0; x < count; ++x) f += set.priors()[x] * per_state[x];
  return f;
}

double naive_mp_fidelity(const StateSet& set, int n, int m, const DiscriminationOptions& options) {
  require(m >= n, "naive_mp_fidelity: need M >= N");
  return naive_mp_fidelity(set, discrimination_success(set, n, options), m, options.worst_case);
}

}  // namespace clonekit::finiteset
