#pragma once

namespace clonekit {

// A fidelity together with the two factors of its upper bound.
struct FidelityReport {
  double fidelity = 0.0;
  double max_eigenvalue = 0.0;       // largest eigenvalue of the average M-copy target state
  double success_probability = 0.0;  // optimal (density of) correct identification from N copies
  double bound = 0.0;                // max_eigenvalue * success_probability
  double envelope = 0.0;             // absolute error attached to `fidelity`
};

}  // namespace clonekit
