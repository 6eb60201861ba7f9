#pragma once

// Phase-covariant cloning of clock states sum_E sqrt(p_E) e^{i E theta} |E>
// with an integer spectrum.

#include <vector>

#include "clonekit/symcomb.hpp"

namespace clonekit::clock {

class Family {
public:
  Family(std::vector<Energy> spectrum, std::vector<double> probs);

  const std::vector<Energy>& spectrum() const { return spectrum_; }
  const std::vector<double>& probs() const { return probs_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }

private:
  std::vector<Energy> spectrum_;
  std::vector<double> probs_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

// Energy offset between the N- and M-copy spectra. Among the differences
// a - b (a in the spectrum of H^(M), b in that of H^(N)) picks the one closest to the
// mean offset (M - N) mu; ties go to the value at or above it.
Energy shift_e0(int n, int m, const Family& family);

double economical_fidelity(int n, int m, const Family& family);
double success_probability(int n, const Family& family);
double average_state_max_eigenvalue(int m, const Family& family);
double upper_bound(int n, int m, const Family& family);
double mp_protocol_fidelity(int n, int k, int m, const Family& family);
double naive_ratio(int n, int m, const Family& family);
double asymptotic_fidelity(int n, int m);

}  // namespace clonekit::clock
