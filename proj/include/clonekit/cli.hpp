#pragma once

// Command-line front end: experiment configs, grid sweeps and CSV output.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/symcomb.hpp"

namespace clonekit::cli {

struct ExperimentConfig {
  std::string family;  // finite, coherent, multiphase, clock, entangled
  int d = 2;
  std::vector<double> probs;     // empty = uniform over d levels
  std::vector<Energy> spectrum;  // clock only
  std::vector<int> n_grid{1};
  std::vector<int> m_grid{2};
  std::vector<int> k_grid;       // empty = derive from epsilon
  double epsilon = 1.0 / 3.0;    // K = ceil(M^{1 - epsilon})
  std::uint64_t seed = 0;
  std::string output;            // empty = stdout
  bool timing = false;

  // finite sets: explicit states (normalised on load), or `random_states` random ones in C^d
  std::vector<std::vector<std::complex<double>>> states;
  std::vector<double> priors;
  int random_states = 0;
  bool worst_case = false;

  int restarts = 8;
  std::uint64_t dimension_cap = 400;
};

struct Row {
  std::string family;
  int d = 0;
  int n = 0;
  std::optional<int> k;
  int m = 0;
  std::optional<double> f_econ, f_mp, f_naive, bound, ratio, runtime_ms;
};

// "1,2,5", "a:b" (unit step), "a:b:s" (step s) or "a:b:geometric" (doubling).
std::vector<int> parse_grid(const std::string& text);

std::string csv_header();
std::string csv_line(const Row& row);

// Evaluates every grid point of `config`, sorted by (N, M, K).
std::vector<Row> run_experiment(const ExperimentConfig& config, unsigned threads);

// Worker count from CLONEKIT_THREADS, else the hardware concurrency.
unsigned worker_count();

// Exit codes: 0 success, 1 invariant violation or failed run, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clonekit::cli
