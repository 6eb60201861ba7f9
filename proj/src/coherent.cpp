#include "clonekit/coherent.hpp"

#include <cmath>
#include <numeric>

#include "clonekit/error.hpp"
#include "clonekit/symcomb.hpp"

namespace clonekit::coherent {

namespace {

constexpr std::uint64_t kWernerDimensionCap = 4096;

void require_copies(int n, int m) { require(n >= 1 && m >= n, "coherent: need 1 <= N <= M"); }

void require_qudit(const Family& family, const char* op) {
  require(family.kind == Family::Kind::QuditPure,
          std::string(op) + " is only simulated for qudit pure states");
}

// log of the multinomial coefficient N! / prod n_j!.
double log_multinomial_coefficient(const Partition& n) {
  double v = log_factorial(n.total());
  for (int c : n.counts) v -= log_factorial(c);
  return v;
}

}  // namespace

Family Family::qudit_pure(int d) {
  require(d >= 2, "qudit pure states need d >= 2");
  return Family{Kind::QuditPure, d};
}

Family Family::harmonic_oscillator() { return Family{Kind::HarmonicOscillator, 0}; }

std::uint64_t formal_dimension(const Family& family, int m) {
  require(m >= 1, "formal_dimension: M must be >= 1");
  if (family.kind == Family::Kind::HarmonicOscillator) return static_cast<std::uint64_t>(m);
  return symmetric_dimension(m, family.d);
}

Rational werner_fidelity_exact(const Family& family, int n, int m) {
  require_copies(n, m);
  const std::uint64_t num = formal_dimension(family, n);
  const std::uint64_t den = formal_dimension(family, m);
  const std::uint64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

double werner_fidelity(const Family& family, int n, int m) {
  return werner_fidelity_exact(family, n, m).value();
}

CMatrix werner_cloner_apply(const Family& family, int n, int m, const CMatrix& rho) {
  require_qudit(family, "werner_cloner_apply");
  require_copies(n, m);
  const int d = family.d;
  const auto in_parts = enumerate_partitions(n, d);
  const auto out_parts = enumerate_partitions(m, d);
  if (out_parts.size() > kWernerDimensionCap) {
    throw CapExceeded("werner_cloner_apply: output dimension exceeds cap");
  }
  require(rho.rows() == static_cast<Eigen::Index>(in_parts.size()) && rho.cols() == rho.rows(),
          "werner_cloner_apply: rho has the wrong dimension");

  const PartitionIndex out_index(out_parts);
  const auto rest = enumerate_partitions(m - n, d);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_parts.size()),
                              static_cast<Eigen::Index>(out_parts.size()));
  // <M,m| (|N,n><N,n'| (x) I) |M,m'> = sum_r c(n, r) c(n', r) with m = n + r, m' = n' + r
  // and c(n, r) = sqrt(C(N, n) C(M - N, r) / C(M, n + r)).
  for (const auto& r : rest) {
    const double lr = log_multinomial_coefficient(r);
    std::vector<std::ptrdiff_t> target(in_parts.size());
    std::vector<double> coeff(in_parts.size());
    for (std::size_t i = 0; i < in_parts.size(); ++i) {
      const Partition sum = in_parts[i] + r;
      target[i] = out_index.find(sum);
      coeff[i] = std::exp(0.5 * (log_multinomial_coefficient(in_parts[i]) + lr -
                                 log_multinomial_coefficient(sum)));
    }
    for (std::size_t i = 0; i < in_parts.size(); ++i) {
      for (std::size_t j = 0; j < in_parts.size(); ++j) {
        out(target[i], target[j]) += coeff[i] * coeff[j] * rho(static_cast<Eigen::Index>(i),
                                                                static_cast<Eigen::Index>(j));
      }
    }
  }
  return werner_fidelity(family, n, m) * out;
}

double naive_mp_worstcase(const Family& family, int n, int m) {
  require_copies(n, m);
  return static_cast<double>(formal_dimension(family, n)) /
         static_cast<double>(formal_dimension(family, m + n));
}

double mp_epsilon_bound(const Family& family, int n, int m) {
  require_copies(n, m);
  const double dn = static_cast<double>(formal_dimension(family, n));
  const double dm = static_cast<double>(formal_dimension(family, m));
  const double eps = n / (m * dm);
  require(eps * dm < 1.0, "mp_epsilon_bound: eps d_M >= 1, the bound is vacuous");
  return dn * std::pow(eps, static_cast<double>(n) / m) * (1.0 - eps * dm) / dm;
}

FidelityReport average_fidelity_identity(const Family& family, int n, int m) {
  require_copies(n, m);
  FidelityReport report;
  report.max_eigenvalue = 1.0 / static_cast<double>(formal_dimension(family, m));
  report.success_probability = static_cast<double>(formal_dimension(family, n));
  report.bound = report.max_eigenvalue * report.success_probability;
  report.fidelity = werner_fidelity(family, n, m);
  report.envelope = 0.0;
  if (std::abs(report.bound - report.fidelity) > 1e-12 * report.fidelity) {
    throw std::logic_error("average_fidelity_identity: product differs from d_N / d_M");
  }
  return report;
}

double harmonic_oscillator_fidelity(int n, int m) {
  require_copies(n, m);
  return static_cast<double>(n) / m;
}

}  // namespace clonekit::coherent
