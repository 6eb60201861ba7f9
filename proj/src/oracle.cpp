#include "clonekit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "clonekit/error.hpp"

namespace clonekit::oracle {

namespace {

CMatrix block(const CMatrix& choi, int i, int j, int d_out) {
  return choi.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out, d_out,
                    d_out);
}

// Rescales J so that Tr_out J = I; directions outside the support of Tr_out J
// are completed with the maximally mixed output.
CMatrix normalize_choi(const CMatrix& choi, int d_in, int d_out) {
  const CMatrix sigma = linalg::partial_trace_out(choi, d_in, d_out);
  const CMatrix s = linalg::psd_inv_sqrt(sigma, 1e-14);
  const CMatrix lift = linalg::kron(s, CMatrix::Identity(d_out, d_out));
  CMatrix out = linalg::hermitian_part(lift * choi * lift);
  const CMatrix missing =
      linalg::positive_part(CMatrix::Identity(d_in, d_in) - linalg::partial_trace_out(out, d_in, d_out));
  out += linalg::kron(missing, CMatrix::Identity(d_out, d_out) / static_cast<double>(d_out));
  return out;
}

double objective(const CMatrix& choi, const CMatrix& omega) { return (choi * omega).trace().real(); }

double dual_value(const CMatrix& choi, const CMatrix& omega, int d_in, int d_out) {
  const CMatrix y = linalg::hermitian_part(linalg::partial_trace_out(omega * choi, d_in, d_out));
  const double lambda =
      linalg::max_eigenvalue(omega - linalg::kron(y, CMatrix::Identity(d_out, d_out)));
  return y.trace().real() + lambda * d_in;
}

CMatrix fixed_point_step(const CMatrix& choi, const CMatrix& omega, int d_in, int d_out) {
  const CMatrix x = linalg::hermitian_part(omega * choi * omega);
  const CMatrix r = linalg::psd_inv_sqrt(linalg::partial_trace_out(x, d_in, d_out), 1e-14);
  const CMatrix lift = linalg::kron(r, CMatrix::Identity(d_out, d_out));
  return normalize_choi(lift * x * lift, d_in, d_out);
}

SeesawResult run_seesaw(const CMatrix& omega, int d_in, int d_out, CMatrix start,
                        const SeesawConfig& config, std::uint64_t seed) {
  SeesawResult out;
  out.seed = seed;
  CMatrix choi = normalize_choi(start, d_in, d_out);
  double value = objective(choi, omega);
  double upper = dual_value(choi, omega, d_in, d_out);
  CMatrix best = choi;
  double best_value = value;
  int it = 0;
  for (; it < config.max_iterations; ++it) {
    if (upper - best_value <= config.tolerance * std::max(1.0, best_value)) break;
    choi = fixed_point_step(choi, omega, d_in, d_out);
    const double next = objective(choi, omega);
    upper = std::min(upper, dual_value(choi, omega, d_in, d_out));
    if (next > best_value) {
      best_value = next;
      best = choi;
    }
    const bool stalled = std::abs(next - value) <= 1e-15 * std::max(1.0, std::abs(value));
    value = next;
    if (stalled && it > 10) break;
  }
  out.value = best_value;
  out.upper = std::max(upper, best_value);
  out.channel = DenseChannel(best, d_in, d_out);
  out.iterations = it;
  out.converged = out.upper - out.value <= 1e-6;
  return out;
}

}  // namespace

DenseChannel::DenseChannel(CMatrix choi, int d_in, int d_out)
    : choi_(std::move(choi)), d_in_(d_in), d_out_(d_out) {
  require(d_in >= 1 && d_out >= 1, "DenseChannel: dimensions must be positive");
  require(choi_.rows() == static_cast<Eigen::Index>(d_in) * d_out && choi_.cols() == choi_.rows(),
          "DenseChannel: Choi matrix has the wrong size");
}

DenseChannel DenseChannel::from_kraus(const std::vector<CMatrix>& kraus) {
  require(!kraus.empty(), "from_kraus: need at least one operator");
  const auto d_out = static_cast<int>(kraus.front().rows());
  const auto d_in = static_cast<int>(kraus.front().cols());
  CMatrix choi = CMatrix::Zero(static_cast<Eigen::Index>(d_in) * d_out, static_cast<Eigen::Index>(d_in) * d_out);
  for (const auto& k : kraus) {
    require(k.rows() == d_out && k.cols() == d_in, "from_kraus: inconsistent Kraus shapes");
    for (int i = 0; i < d_in; ++i) {
      for (int j = 0; j < d_in; ++j) {
        choi.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out, d_out, d_out) +=
            k.col(i) * k.col(j).adjoint();
      }
    }
  }
  return DenseChannel(std::move(choi), d_in, d_out);
}

DenseChannel DenseChannel::from_isometry(const CMatrix& v) { return from_kraus({v}); }

DenseChannel DenseChannel::identity(int d) { return from_isometry(CMatrix::Identity(d, d)); }

CMatrix DenseChannel::apply(const CMatrix& rho) const {
  require(rho.rows() == d_in_ && rho.cols() == d_in_, "DenseChannel::apply: wrong input dimension");
  CMatrix out = CMatrix::Zero(d_out_, d_out_);
  for (int i = 0; i < d_in_; ++i) {
    for (int j = 0; j < d_in_; ++j) {
      if (rho(i, j) != cplx(0.0)) out += rho(i, j) * block(choi_, i, j, d_out_);
    }
  }
  return out;
}

CMatrix DenseChannel::adjoint_apply(const CMatrix& s) const {
  require(s.rows() == d_out_ && s.cols() == d_out_, "DenseChannel::adjoint_apply: wrong dimension");
  CMatrix out(d_in_, d_in_);
  for (int i = 0; i < d_in_; ++i) {
    for (int j = 0; j < d_in_; ++j) out(j, i) = (s * block(choi_, i, j, d_out_)).trace();
  }
  return out;
}

double DenseChannel::trace_preservation_error() const {
  const CMatrix sigma = linalg::partial_trace_out(choi_, d_in_, d_out_);
  return (sigma - CMatrix::Identity(d_in_, d_in_)).cwiseAbs().maxCoeff();
}

double DenseChannel::min_choi_eigenvalue() const { return linalg::min_eigenvalue(choi_); }

bool DenseChannel::is_cptp(double tol) const {
  return trace_preservation_error() <= tol && min_choi_eigenvalue() >= -tol;
}

double fidelity_by_quadrature(const DenseChannel& channel, const FamilyQuadrature& family) {
  double f = 0.0;
  for (const auto& s : family) {
    const CMatrix out = channel.apply(linalg::projector(s.input));
    f += s.weight * s.output.dot(out * s.output).real();
  }
  return f;
}

CMatrix fidelity_operator(const FamilyQuadrature& family) {
  require(!family.empty(), "fidelity_operator: empty family");
  const auto d_in = family.front().input.size();
  const auto d_out = family.front().output.size();
  CMatrix omega = CMatrix::Zero(d_in * d_out, d_in * d_out);
  for (const auto& s : family) {
    omega += s.weight * linalg::kron(CMatrix(linalg::projector(s.input).transpose()),
                                     linalg::projector(s.output));
  }
  return linalg::hermitian_part(omega);
}

SeesawResult seesaw_optimal_fidelity(const CMatrix& omega, int d_in, int d_out, const SeesawConfig& config,
                                     const std::vector<DenseChannel>& warm_starts) {
  const auto dim = static_cast<std::size_t>(d_in) * static_cast<std::size_t>(d_out);
  if (dim > config.dimension_cap) throw CapExceeded("seesaw: d_in * d_out exceeds the cap");
  require(omega.rows() == static_cast<Eigen::Index>(dim) && omega.cols() == omega.rows(),
          "seesaw: Omega has the wrong size");
  require(config.restarts >= 1 || !warm_starts.empty(), "seesaw: nothing to run");

  std::vector<std::future<SeesawResult>> jobs;
  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
    jobs.push_back(std::async(std::launch::async, [&, seed] {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss;
      CMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
      }
      return run_seesaw(omega, d_in, d_out, g * g.adjoint(), config, seed);
    }));
  }
  std::vector<SeesawResult> results;
  for (auto& j : jobs) results.push_back(j.get());
  for (std::size_t w = 0; w < warm_starts.size(); ++w) {
    require(warm_starts[w].d_in() == d_in && warm_starts[w].d_out() == d_out,
            "seesaw: warm start has the wrong dimensions");
    auto r = run_seesaw(omega, d_in, d_out, warm_starts[w].choi(), config,
                        config.seed + static_cast<std::uint64_t>(config.restarts) + w);
    // The warm start itself is a valid channel; never report less than it.
    const double start_value = objective(warm_starts[w].choi(), omega);
    if (start_value > r.value) {
      r.value = start_value;
      r.channel = warm_starts[w];
    }
    results.push_back(std::move(r));
  }
  // Highest value wins; ties keep the earliest (lowest seed) branch.
  std::size_t best = 0;
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    upper = std::min(upper, results[i].upper);
    if (results[i].value > results[best].value) best = i;
  }
  SeesawResult out = results[best];
  out.upper = std::max(upper, out.value);
  out.converged = out.upper - out.value <= 1e-6;
  return out;
}

double covariance_check(const DenseChannel& channel, const GroupSampler& sampler, int samples,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto [u_in, u_out] = sampler(rng);
    const CMatrix rho = linalg::projector(linalg::random_state(channel.d_in(), rng));
    const CMatrix lhs = u_out * channel.apply(rho) * u_out.adjoint();
    const CMatrix rhs = channel.apply(u_in * rho * u_in.adjoint());
    worst = std::max(worst, linalg::trace_norm(linalg::hermitian_part(lhs - rhs)));
  }
  return worst;
}

DistanceResult trace_distance_econ_vs_mp(const DenseChannel& economical, const DenseChannel& mp,
                                         const DistanceConfig& config) {
  require(economical.d_in() == mp.d_in() && economical.d_out() == mp.d_out(),
          "trace_distance: channels have different dimensions");
  const DenseChannel diff(economical.choi() - mp.choi(), mp.d_in(), mp.d_out());
  const int d_in = diff.d_in();
  DistanceResult out;
  out.bound_proven = 2.0 * (1.0 - std::sqrt(1.0 / d_in));
  out.bound_claimed = 2.0 * (1.0 - 1.0 / d_in);
  out.estimate = -1.0;

  std::vector<std::future<std::pair<double, CVector>>> jobs;
  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
    jobs.push_back(std::async(std::launch::async, [&, seed] {
      std::mt19937_64 rng(seed);
      CVector psi = linalg::random_state(d_in, rng);
      double value = linalg::trace_norm(diff.apply(linalg::projector(psi)));
      // ||L(psi)||_1 = max_S <psi|L^dagger(S)|psi>; alternate the two maximisations.
      for (int it = 0; it < config.max_iterations; ++it) {
        const CMatrix sign = linalg::hermitian_sign(diff.apply(linalg::projector(psi)));
        const CVector next = linalg::top_eigenvector(diff.adjoint_apply(sign));
        const double next_value = linalg::trace_norm(diff.apply(linalg::projector(next)));
        if (next_value <= value + 1e-14) break;
        psi = next;
        value = next_value;
      }
      return std::make_pair(value, psi);
    }));
  }
  for (auto& j : jobs) {
    auto [value, psi] = j.get();
    if (value > out.estimate) {
      out.estimate = value;
      out.witness = psi;
    }
  }
  return out;
}

}  // namespace clonekit::oracle
