#pragma once

// Cloning of Haar-random two-qubit maximally entangled states through the
// angular-momentum decomposition of N spin-1/2 systems.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "clonekit/symcomb.hpp"

namespace clonekit::entangled {

using BigInt = boost::multiprecision::cpp_int;

struct JLevel {
  TwiceJ j;
  int dimension = 0;     // d_j = 2j + 1
  BigInt multiplicity;   // m_j^(N)
  double weight = 0.0;   // p_{N,j} = d_j m_j / 2^N
};

struct JDecomposition {
  int copies = 0;
  std::vector<JLevel> levels;  // ascending in j

  // sum_j d_j m_j == 2^N, in exact integer arithmetic.
  bool dimension_identity_holds() const;
};

JDecomposition decompose(int n);

// Both economical quantities require N <= M of equal parity.
double economical_fidelity(int n, int m);
double success_probability(int n);
double average_state_max_eigenvalue(int m);
double upper_bound(int n, int m);

// Character-expansion integral over the rotation angle, by Gauss-Legendre.
// `nodes` = 0 selects max(4 (M + N), 64).
double mp_protocol_fidelity(int n, int k, int m, int nodes = 0);
double naive_ratio(int n, int m);
double asymptotic_fidelity(int n, int m);

// ceil(M^{1 - epsilon}) raised by one if needed to match the parity of M.
int protocol_copies(int m, double epsilon);

}  // namespace clonekit::entangled
