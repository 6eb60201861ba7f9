#pragma once

// Multiphase-covariant cloning of sum_j sqrt(p_j) e^{i theta_j} |j> with
// independent uniform phases.

#include <vector>

#include "clonekit/symcomb.hpp"

namespace clonekit::multiphase {

class Family {
public:
  explicit Family(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  int levels() const { return static_cast<int>(probs_.size()); }

private:
  std::vector<double> probs_;
};

// Label map n -> n - n* + m* between partitions of N and of M.
struct EconomicalIsometry {
  int input_copies = 0;
  int output_copies = 0;
  Partition input_mode;
  Partition output_mode;
  std::vector<Partition> inputs;   // enumeration order of partitions of N
  std::vector<Partition> outputs;  // outputs[i] is the image of inputs[i]
};

// Most likely partition of N; ties go to the lexicographically greatest one.
Partition mode_partition(int copies, const Family& family);

EconomicalIsometry economical_isometry(int n, int m, const Family& family);
double economical_fidelity(int n, int m, const Family& family);

// (sum_n sqrt(p_{N,n}))^2, a density with respect to d theta / (2 pi)^{d-1}.
double success_probability(int n, const Family& family);
double average_state_max_eigenvalue(int m, const Family& family);
double upper_bound(int n, int m, const Family& family);

// Estimate with the optimal POVM, prepare K copies, clone K -> M economically.
// Evaluated exactly by matching the Fourier coefficients of both factors.
double mp_protocol_fidelity(int n, int k, int m, const Family& family);

// Re-preparing M copies of the estimate, relative to the economical cloner.
double naive_ratio(int n, int m, const Family& family);

double asymptotic_fidelity(int n, int m, int levels);

}  // namespace clonekit::multiphase
