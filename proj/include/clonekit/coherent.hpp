#pragma once

// Coherent-state cloning. Qudit pure states are simulated on the symmetric
// subspace; the harmonic oscillator only enters through its closed form.

#include <cstdint>

#include "clonekit/linalg.hpp"
#include "clonekit/report.hpp"

namespace clonekit::coherent {

struct Family {
  enum class Kind { QuditPure, HarmonicOscillator };

  Kind kind = Kind::QuditPure;
  int d = 2;

  static Family qudit_pure(int d);
  static Family harmonic_oscillator();
};

struct Rational {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  bool operator==(const Rational&) const = default;
};

std::uint64_t formal_dimension(const Family& family, int m);

Rational werner_fidelity_exact(const Family& family, int n, int m);
double werner_fidelity(const Family& family, int n, int m);

// (d_N / d_M) P_M (rho (x) I) P_M in the basis of enumerate_partitions(M, d).
// `rho` is expressed in the basis of enumerate_partitions(N, d).
CMatrix werner_cloner_apply(const Family& family, int n, int m, const CMatrix& rho);

// d_N / d_{M+N}.
double naive_mp_worstcase(const Family& family, int n, int m);

// d_N eps^{N/M} (1 - eps d_M) / d_M with eps = N / (M d_M).
double mp_epsilon_bound(const Family& family, int n, int m);

// 1/d_M times d_N; checked against werner_fidelity.
FidelityReport average_fidelity_identity(const Family& family, int n, int m);

// Reference value N/M for harmonic-oscillator coherent states.
double harmonic_oscillator_fidelity(int n, int m);

}  // namespace clonekit::coherent
