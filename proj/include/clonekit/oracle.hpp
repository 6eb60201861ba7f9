#pragma once

// Brute-force dense simulation at small dimensions: explicit channels,
// quadrature averages over state families, see-saw channel optimisation and
// trace-distance search. Used to cross-check every closed form.

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "clonekit/clock.hpp"
#include "clonekit/finiteset.hpp"
#include "clonekit/linalg.hpp"
#include "clonekit/multiphase.hpp"

namespace clonekit::oracle {

// Channel stored through its Choi operator J = sum_ij |i><j| (x) C(|i><j|).
class DenseChannel {
public:
  DenseChannel() = default;
  DenseChannel(CMatrix choi, int d_in, int d_out);

  static DenseChannel from_kraus(const std::vector<CMatrix>& kraus);
  static DenseChannel from_isometry(const CMatrix& v);
  static DenseChannel identity(int d);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const CMatrix& choi() const { return choi_; }

  CMatrix apply(const CMatrix& rho) const;
  // Heisenberg picture: Tr[S C(rho)] = Tr[adjoint_apply(S) rho].
  CMatrix adjoint_apply(const CMatrix& s) const;

  double trace_preservation_error() const;  // max |Tr_out J - I| entry
  double min_choi_eigenvalue() const;
  bool is_cptp(double tol = 1e-9) const;

private:
  CMatrix choi_;
  int d_in_ = 0;
  int d_out_ = 0;
};

// One quadrature node of a state family: weight, N-copy input, M-copy target.
struct FamilySample {
  double weight = 0.0;
  CVector input;
  CVector output;
};
using FamilyQuadrature = std::vector<FamilySample>;

double fidelity_by_quadrature(const DenseChannel& channel, const FamilyQuadrature& family);

// Omega = sum_x w_x (psi_x psi_x^dagger)^T (x) phi_x phi_x^dagger, so that F = Tr[J Omega].
CMatrix fidelity_operator(const FamilyQuadrature& family);

struct SeesawConfig {
  int restarts = 8;
  int max_iterations = 10'000;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::size_t dimension_cap = 400;  // on d_in * d_out
};

struct SeesawResult {
  double value = 0.0;  // fidelity of `channel` (a lower bound on the optimum)
  double upper = 0.0;  // dual certificate
  DenseChannel channel;
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

// Maximises Tr[J Omega] over Choi operators with Tr_out J = I. Each restart
// iterates J <- (R^-1 (x) I) Omega J Omega (R^-1 (x) I), R = (Tr_out Omega J Omega)^1/2,
// and certifies with Y = Tr_out[Omega J] shifted until Y (x) I >= Omega.
SeesawResult seesaw_optimal_fidelity(const CMatrix& omega, int d_in, int d_out,
                                     const SeesawConfig& config = {},
                                     const std::vector<DenseChannel>& warm_starts = {});

// Random group element as (input unitary, output unitary).
using GroupSampler = std::function<std::pair<CMatrix, CMatrix>(std::mt19937_64&)>;

// max || U_out C(rho) U_out^dagger - C(U_in rho U_in^dagger) ||_1 over sampled
// group elements and random pure rho.
double covariance_check(const DenseChannel& channel, const GroupSampler& sampler, int samples,
                        std::uint64_t seed = 0);

struct DistanceConfig {
  int restarts = 16;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
};

struct DistanceResult {
  double estimate = 0.0;
  double bound_proven = 0.0;   // 2 (1 - sqrt(1 / d_in))
  double bound_claimed = 0.0;  // 2 (1 - 1 / d_in), reported only
  CVector witness;
  bool bound_respected() const { return estimate >= bound_proven - 1e-6; }
};

// max over pure inputs of || C(psi) - C~(psi) ||_1 by alternating sign / top-eigenvector ascent.
DistanceResult trace_distance_econ_vs_mp(const DenseChannel& economical, const DenseChannel& mp,
                                         const DistanceConfig& config = {});

// ---- builders -------------------------------------------------------------

// Columns are the symmetric basis vectors |N, n> in C^{d^N}, ordered like
// enumerate_partitions(N, d). The first copy is the most significant digit.
RMatrix symmetric_basis(int copies, int levels);

// Coordinates of psi^{(x) N} in the symmetric basis.
CVector symmetric_power(const CVector& psi, int copies);

CVector multiphase_state(const multiphase::Family& family, const std::vector<double>& theta, int copies);
CVector clock_state(const clock::Family& family, double theta, int copies);

// Uniform torus grid (theta_0 = 0) / circle grid with `points` per phase.
FamilyQuadrature multiphase_quadrature(const multiphase::Family& family, int n, int m, int points);
FamilyQuadrature clock_quadrature(const clock::Family& family, int n, int m, int points);

// Pure qubit states on the Bloch sphere, Gauss-Legendre in cos(beta) times a
// uniform azimuth, in symmetric-basis coordinates.
FamilyQuadrature qubit_quadrature(int n, int m, int polar_nodes, int azimuth_points);

// Euler-angle SU(2) rule: weights sum to 1 and integrate every function of
// the rotation with angular momentum below the resolution exactly.
struct SU2Node {
  double weight;
  CMatrix u;
};
std::vector<SU2Node> su2_quadrature(int polar_nodes, int azimuth_points);

DenseChannel multiphase_economical_channel(int n, int m, const multiphase::Family& family);
DenseChannel clock_economical_channel(int n, int m, const clock::Family& family);

// Measure the covariant POVM sum_n e^{i n.theta} |n>, re-prepare M copies of the estimate.
DenseChannel multiphase_naive_mp_channel(int n, int m, const multiphase::Family& family);

// (d_N / d_M) P_M (rho (x) I) P_M built from the explicit projector on C^{d^M}.
DenseChannel werner_channel(int n, int m, int levels);

// Double quadrature of the estimate / K-copy / economical-clone protocol.
double multiphase_mp_fidelity(int n, int k, int m, const multiphase::Family& family);
double clock_mp_fidelity(int n, int k, int m, const clock::Family& family);

// ---- two-qubit maximally entangled states ---------------------------------

// Real orthonormal basis |j, m, alpha> of (C^2)^{(x) N} adapted to the total
// angular momentum (Condon-Shortley phases). Columns are grouped by j
// ascending, then alpha, then m descending.
struct SpinBasis {
  int copies = 0;
  RMatrix vectors;
  struct Column {
    TwiceJ j;
    int twice_m;
    int alpha;
  };
  std::vector<Column> columns;
};
SpinBasis spin_basis(int copies);

// Columns e_{j,m,m'} = sum_alpha |j m alpha>_A |j m' alpha>_B / sqrt(m_j) of the
// sector containing every psi_g^{(x) N}; A^N (x) B^N ordering. Optionally
// restricted to j <= max_twice_j / 2.
CMatrix entangled_sector_basis(int copies, int max_twice_j = -1);

// (U (x) I)|I>> / sqrt(2), N copies, in A^N (x) B^N ordering.
CVector entangled_state(const CMatrix& u, int copies);

// Embedding isometry from sector coordinates of N copies into C^{4^M}.
CMatrix entangled_economical_isometry(int n, int m);

// Haar average of |<psi^M| V psi^N>|^2.
double entangled_economical_fidelity(int n, int m, int polar_nodes = 0, int azimuth_points = 0);

// Double Haar quadrature of the protocol built on the covariant POVM
// eta = sum_j d_j psi^{(j,N)}.
double entangled_mp_fidelity(int n, int k, int m);

// ---- finite sets ------------------------------------------------------------

// Fidelity operator on span(psi^{(x)N}) -> span(psi^{(x)M}) via Gram vectors.
CMatrix finite_set_fidelity_operator(const finiteset::StateSet& set, int n, int m);

// The naive measure-and-prepare channel on the same spans.
DenseChannel finite_set_naive_channel(const finiteset::StateSet& set, const finiteset::Discrimination& disc,
                                      int m);

}  // namespace clonekit::oracle
