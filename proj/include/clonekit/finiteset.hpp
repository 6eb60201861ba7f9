#pragma once

// Cloning and discrimination of a finite set of pure states.

#include <cstdint>
#include <vector>

#include "clonekit/linalg.hpp"

namespace clonekit::finiteset {

class StateSet {
public:
  StateSet(std::vector<CVector> states, std::vector<double> priors);

  const std::vector<CVector>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  int dimension() const { return static_cast<int>(states_.front().size()); }
  int size() const { return static_cast<int>(states_.size()); }

  // <psi_x | psi_y>.
  cplx overlap(int x, int y) const { return states_[static_cast<std::size_t>(x)].dot(states_[static_cast<std::size_t>(y)]); }

private:
  std::vector<CVector> states_;
  std::vector<double> priors_;
};

inline constexpr double kLemmaAlpha = 3.0 + 2.0 * 1.4142135623730951;

// max over x != y of |<psi_x|psi_y>|^2.
double pairwise_max_overlap(const StateSet& set);

struct GramResult {
  std::vector<CVector> basis;     // gamma_x, in input order
  std::vector<double> distances;  // sqrt(1 - |<psi_x|gamma_x>|^2)
  double overlap = 0.0;           // eta
  double bound = 0.0;             // sqrt(alpha^|X| eta / (alpha - 1))
};

double lemma_bound(int count, double eta);
GramResult gram_schmidt_with_bound(const StateSet& set);

// Vectors v_x in C^|X| with <v_x|v_y> = <psi_x|psi_y>^N (columns of G^{1/2}).
std::vector<CVector> span_vectors(const StateSet& set, int copies);

struct DiscriminationOptions {
  bool worst_case = false;  // maximise min_x instead of the prior average
  double tolerance = 1e-8;
  int max_iterations = 10'000;
  std::uint64_t dimension_cap = 4096;  // on d_H^N
};

struct Discrimination {
  double value = 0.0;  // achieved by `povm` (lower edge)
  double upper = 0.0;  // dual certificate (upper edge)
  int iterations = 0;
  std::vector<CMatrix> povm;  // on the span of the N-copy states, indexed like the set
  std::vector<CVector> vectors;

  double gap() const { return upper - value; }
};

Discrimination discrimination_success(const StateSet& set, int n,
                                      const DiscriminationOptions& options = {});

// p_succ^(N) + sqrt(alpha^|X| eta^M / (alpha - 1)); not clamped to 1.
double cloning_upper_bound(const StateSet& set, int n, int m,
                           const DiscriminationOptions& options = {});

// Measure with the discrimination POVM, re-prepare M copies of the guess.
double naive_mp_fidelity(const StateSet& set, int n, int m,
                         const DiscriminationOptions& options = {});

// Same, for an already computed discrimination.
double naive_mp_fidelity(const StateSet& set, const Discrimination& disc, int m,
                         bool worst_case = false);

}  // namespace clonekit::finiteset
