#include <algorithm>
#include <cmath>
#include <numbers>

#include "clonekit/coherent.hpp"
#include "clonekit/error.hpp"
#include "clonekit/oracle.hpp"
#include "clonekit/quadrature.hpp"

namespace clonekit::oracle {

namespace {

constexpr std::uint64_t kFullSpaceCap = 1u << 16;

std::uint64_t checked_power(int base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    out *= static_cast<std::uint64_t>(base);
    if (out > kFullSpaceCap) throw CapExceeded("oracle: tensor-power dimension exceeds cap");
  }
  return out;
}

// Visits every point of a uniform grid on the (levels - 1)-torus.
template <class F>
void for_each_torus_point(int levels, int points, F&& visit) {
  const int free = levels - 1;
  std::vector<int> digit(static_cast<std::size_t>(free), 0);
  std::vector<double> theta(static_cast<std::size_t>(levels), 0.0);
  const double weight = std::pow(1.0 / points, free);
  while (true) {
    for (int a = 0; a < free; ++a) {
      theta[static_cast<std::size_t>(a + 1)] = 2.0 * std::numbers::pi * digit[static_cast<std::size_t>(a)] / points;
    }
    visit(weight, theta);
    int pos = 0;
    while (pos < free && ++digit[static_cast<std::size_t>(pos)] == points) {
      digit[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == free) break;
  }
}

// sum_n e^{i n.theta} |n> over partitions of N.
CVector phase_povm_vector(const std::vector<Partition>& parts, const std::vector<double>& theta) {
  CVector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    double phase = 0.0;
    for (std::size_t a = 0; a < theta.size(); ++a) phase += parts[i].counts[a] * theta[a];
    v(static_cast<Eigen::Index>(i)) = std::polar(1.0, phase);
  }
  return v;
}

CMatrix rz(double a) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, -0.5 * a);
  u(1, 1) = std::polar(1.0, 0.5 * a);
  return u;
}

CMatrix ry(double b) {
  CMatrix u(2, 2);
  u << std::cos(0.5 * b), -std::sin(0.5 * b), std::sin(0.5 * b), std::cos(0.5 * b);
  return u;
}

// Sum over node pairs of w_a w_b |<x_a|y_b>|^2 |<u_b|v_a>|^2.
double paired_average(const std::vector<double>& wa, const CMatrix& x, const CMatrix& v,
                      const std::vector<double>& wb, const CMatrix& y, const CMatrix& u) {
  const CMatrix g1 = x.adjoint() * y;  // [a, b]
  const CMatrix g2 = v.adjoint() * u;  // [a, b], conjugate of <u_b|v_a>
  double total = 0.0;
  for (Eigen::Index a = 0; a < g1.rows(); ++a) {
    for (Eigen::Index b = 0; b < g1.cols(); ++b) {
      total += wa[static_cast<std::size_t>(a)] * wb[static_cast<std::size_t>(b)] * std::norm(g1(a, b)) *
               std::norm(g2(a, b));
    }
  }
  return total;
}

// Energy support of N copies as a dense index.
std::vector<Energy> energy_support(const clock::Family& family, int copies) {
  return energy_distribution(family.spectrum(), family.probs(), copies).support;
}

std::ptrdiff_t position(const std::vector<Energy>& support, Energy e) {
  const auto it = std::lower_bound(support.begin(), support.end(), e);
  if (it == support.end() || *it != e) return -1;
  return it - support.begin();
}

CMatrix clock_isometry(int n, int m, const clock::Family& family) {
  const auto in = energy_support(family, n);
  const auto out = energy_support(family, m);
  const Energy e0 = clock::shift_e0(n, m, family);
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(out.size()), static_cast<Eigen::Index>(in.size()));
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto j = position(out, in[i] + e0);
    require(j >= 0, "clock_economical_channel: shifted energy outside the M-copy spectrum");
    v(j, static_cast<Eigen::Index>(i)) = 1.0;
  }
  return v;
}

CMatrix multiphase_isometry(int n, int m, const multiphase::Family& family) {
  const auto iso = multiphase::economical_isometry(n, m, family);
  const auto out_parts = enumerate_partitions(m, family.levels());
  const PartitionIndex index(out_parts);
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(out_parts.size()),
                            static_cast<Eigen::Index>(iso.inputs.size()));
  for (std::size_t i = 0; i < iso.inputs.size(); ++i) v(index.find(iso.outputs[i]), static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

}  // namespace

RMatrix symmetric_basis(int copies, int levels) {
  require(copies >= 0 && levels >= 1, "symmetric_basis: bad arguments");
  const auto full = checked_power(levels, copies);
  const auto parts = enumerate_partitions(copies, levels);
  const PartitionIndex index(parts);
  RMatrix s = RMatrix::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(parts.size()));
  Partition counts{std::vector<int>(static_cast<std::size_t>(levels), 0)};
  for (std::uint64_t word = 0; word < full; ++word) {
    std::fill(counts.counts.begin(), counts.counts.end(), 0);
    std::uint64_t rest = word;
    for (int c = 0; c < copies; ++c) {
      ++counts.counts[rest % static_cast<std::uint64_t>(levels)];
      rest /= static_cast<std::uint64_t>(levels);
    }
    s(static_cast<Eigen::Index>(word), index.find(counts)) = 1.0;
  }
  for (Eigen::Index c = 0; c < s.cols(); ++c) s.col(c).normalize();
  return s;
}

CVector symmetric_power(const CVector& psi, int copies) {
  const RMatrix s = symmetric_basis(copies, static_cast<int>(psi.size()));
  return s.transpose().cast<cplx>() * linalg::tensor_power(psi, copies);
}

CVector multiphase_state(const multiphase::Family& family, const std::vector<double>& theta, int copies) {
  require(static_cast<int>(theta.size()) == family.levels(), "multiphase_state: need one phase per level");
  const auto parts = enumerate_partitions(copies, family.levels());
  CVector v = phase_povm_vector(parts, theta);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) *= std::exp(0.5 * log_multinomial_weight(copies, family.probs(), parts[i]));
  }
  return v;
}

CVector clock_state(const clock::Family& family, double theta, int copies) {
  const auto dist = energy_distribution(family.spectrum(), family.probs(), copies);
  CVector v(static_cast<Eigen::Index>(dist.size()));
  for (std::size_t i = 0; i < dist.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        std::polar(std::exp(0.5 * dist.log_weights[i]), static_cast<double>(dist.support[i]) * theta);
  }
  return v;
}

FamilyQuadrature multiphase_quadrature(const multiphase::Family& family, int n, int m, int points) {
  FamilyQuadrature out;
  for_each_torus_point(family.levels(), points, [&](double w, const std::vector<double>& theta) {
    out.push_back({w, multiphase_state(family, theta, n), multiphase_state(family, theta, m)});
  });
  return out;
}

FamilyQuadrature clock_quadrature(const clock::Family& family, int n, int m, int points) {
  FamilyQuadrature out;
  const auto rule = uniform_periodic(points, 2.0 * std::numbers::pi);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    out.push_back({rule.weights[q], clock_state(family, rule.nodes[q], n), clock_state(family, rule.nodes[q], m)});
  }
  return out;
}

FamilyQuadrature qubit_quadrature(int n, int m, int polar_nodes, int azimuth_points) {
  FamilyQuadrature out;
  const auto polar = gauss_legendre(polar_nodes);
  const auto azimuth = uniform_periodic(azimuth_points, 2.0 * std::numbers::pi);
  const RMatrix sn = symmetric_basis(n, 2);
  const RMatrix sm = symmetric_basis(m, 2);
  for (std::size_t p = 0; p < polar.size(); ++p) {
    const double beta = std::acos(polar.nodes[p]);
    for (std::size_t a = 0; a < azimuth.size(); ++a) {
      CVector psi(2);
      psi << std::cos(0.5 * beta), std::polar(std::sin(0.5 * beta), azimuth.nodes[a]);
      out.push_back({0.5 * polar.weights[p] * azimuth.weights[a],
                     sn.transpose().cast<cplx>() * linalg::tensor_power(psi, n),
                     sm.transpose().cast<cplx>() * linalg::tensor_power(psi, m)});
    }
  }
  return out;
}

std::vector<SU2Node> su2_quadrature(int polar_nodes, int azimuth_points) {
  std::vector<SU2Node> out;
  const auto polar = gauss_legendre(polar_nodes);
  const auto azimuth = uniform_periodic(azimuth_points, 2.0 * std::numbers::pi);
  for (std::size_t p = 0; p < polar.size(); ++p) {
    const CMatrix middle = ry(std::acos(polar.nodes[p]));
    for (std::size_t a = 0; a < azimuth.size(); ++a) {
      for (std::size_t g = 0; g < azimuth.size(); ++g) {
        out.push_back({0.5 * polar.weights[p] * azimuth.weights[a] * azimuth.weights[g],
                       rz(azimuth.nodes[a]) * middle * rz(azimuth.nodes[g])});
      }
    }
  }
  return out;
}

DenseChannel multiphase_economical_channel(int n, int m, const multiphase::Family& family) {
  return DenseChannel::from_isometry(multiphase_isometry(n, m, family));
}

DenseChannel clock_economical_channel(int n, int m, const clock::Family& family) {
  return DenseChannel::from_isometry(clock_isometry(n, m, family));
}

DenseChannel multiphase_naive_mp_channel(int n, int m, const multiphase::Family& family) {
  const auto in_parts = enumerate_partitions(n, family.levels());
  const auto d_in = static_cast<int>(in_parts.size());
  const auto d_out = static_cast<int>(symmetric_dimension(m, family.levels()));
  CMatrix choi = CMatrix::Zero(static_cast<Eigen::Index>(d_in) * d_out, static_cast<Eigen::Index>(d_in) * d_out);
  for_each_torus_point(family.levels(), 2 * (n + m) + 1, [&](double w, const std::vector<double>& theta) {
    const CVector eta = phase_povm_vector(in_parts, theta);
    const CVector out = multiphase_state(family, theta, m);
    choi += w * linalg::kron(CMatrix(linalg::projector(eta).transpose()), linalg::projector(out));
  });
  return DenseChannel(linalg::hermitian_part(choi), d_in, d_out);
}

DenseChannel werner_channel(int n, int m, int levels) {
  require(n >= 1 && m >= n, "werner_channel: need 1 <= N <= M");
  const RMatrix sn = symmetric_basis(n, levels);
  const RMatrix sm = symmetric_basis(m, levels);
  const auto rest = static_cast<Eigen::Index>(checked_power(levels, m - n));
  const auto d_in = static_cast<int>(sn.cols());
  const auto d_out = static_cast<int>(sm.cols());
  const double scale = static_cast<double>(d_in) / d_out;
  const RMatrix projector = sm * sm.transpose();
  CMatrix choi = CMatrix::Zero(static_cast<Eigen::Index>(d_in) * d_out, static_cast<Eigen::Index>(d_in) * d_out);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      const RMatrix in = sn.col(i) * sn.col(j).transpose();
      RMatrix lifted = RMatrix::Zero(in.rows() * rest, in.cols() * rest);
      for (Eigen::Index r = 0; r < in.rows(); ++r) {
        for (Eigen::Index c = 0; c < in.cols(); ++c) {
          if (in(r, c) != 0.0) lifted.block(r * rest, c * rest, rest, rest).diagonal().setConstant(in(r, c));
        }
      }
      const RMatrix out = sm.transpose() * (projector * lifted * projector) * sm;
      choi.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out, d_out, d_out) =
          scale * out.cast<cplx>();
    }
  }
  return DenseChannel(std::move(choi), d_in, d_out);
}

double multiphase_mp_fidelity(int n, int k, int m, const multiphase::Family& family) {
  require(k >= 1 && k <= m, "multiphase_mp_fidelity: need 1 <= K <= M");
  const auto in_parts = enumerate_partitions(n, family.levels());
  const CMatrix v = multiphase_isometry(k, m, family);
  const int points = 2 * (n + k + m) + 1;
  std::vector<double> w;
  std::vector<CVector> eta, prep, psi_n, psi_m;
  for_each_torus_point(family.levels(), points, [&](double weight, const std::vector<double>& theta) {
    w.push_back(weight);
    eta.push_back(phase_povm_vector(in_parts, theta));
    prep.push_back(v * multiphase_state(family, theta, k));
    psi_n.push_back(multiphase_state(family, theta, n));
    psi_m.push_back(multiphase_state(family, theta, m));
  });
  auto stack = [](const std::vector<CVector>& cols) {
    CMatrix out(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = cols[i];
    return out;
  };
  return paired_average(w, stack(eta), stack(prep), w, stack(psi_n), stack(psi_m));
}

double clock_mp_fidelity(int n, int k, int m, const clock::Family& family) {
  require(k >= 1 && k <= m, "clock_mp_fidelity: need 1 <= K <= M");
  const auto in = energy_support(family, n);
  const CMatrix v = clock_isometry(k, m, family);
  const Energy width = in.back() - in.front();
  const Energy span_k = energy_support(family, k).back() - energy_support(family, k).front();
  const auto rule = uniform_periodic(static_cast<int>(2 * (width + span_k) + 1), 2.0 * std::numbers::pi);
  const auto nodes = static_cast<Eigen::Index>(rule.size());
  CMatrix eta(static_cast<Eigen::Index>(in.size()), nodes);
  CMatrix prep(v.rows(), nodes);
  CMatrix psi_n(static_cast<Eigen::Index>(in.size()), nodes);
  CMatrix psi_m(v.rows(), nodes);
  for (Eigen::Index q = 0; q < nodes; ++q) {
    const double theta = rule.nodes[static_cast<std::size_t>(q)];
    for (std::size_t i = 0; i < in.size(); ++i) {
      eta(static_cast<Eigen::Index>(i), q) = std::polar(1.0, static_cast<double>(in[i]) * theta);
    }
    prep.col(q) = v * clock_state(family, theta, k);
    psi_n.col(q) = clock_state(family, theta, n);
    psi_m.col(q) = clock_state(family, theta, m);
  }
  return paired_average(rule.weights, eta, prep, rule.weights, psi_n, psi_m);
}

SpinBasis spin_basis(int copies) {
  require(copies >= 1 && copies <= 8, "spin_basis: 1 <= N <= 8");
  const int dim = 1 << copies;
  RMatrix raise = RMatrix::Zero(dim, dim);
  RMatrix lower = RMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    for (int q = 0; q < copies; ++q) {
      const int bit = 1 << (copies - 1 - q);
      // |0> is spin up; J_+ flips a 1 to a 0.
      if (s & bit) {
        raise(s ^ bit, s) += 1.0;
      } else {
        lower(s ^ bit, s) += 1.0;
      }
    }
  }
  SpinBasis out;
  out.copies = copies;
  out.vectors = RMatrix::Zero(dim, dim);
  Eigen::Index col = 0;
  for (TwiceJ j : j_ladder(copies)) {
    const int ones = (copies - j.value) / 2;
    std::vector<int> weight_states;
    for (int s = 0; s < dim; ++s) {
      if (__builtin_popcount(static_cast<unsigned>(s)) == ones) weight_states.push_back(s);
    }
    RMatrix embed = RMatrix::Zero(dim, static_cast<Eigen::Index>(weight_states.size()));
    for (std::size_t i = 0; i < weight_states.size(); ++i) embed(weight_states[i], static_cast<Eigen::Index>(i)) = 1.0;
    Eigen::JacobiSVD<RMatrix> svd(raise * embed, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int alpha = 0;
    for (Eigen::Index c = 0; c < embed.cols(); ++c) {
      if (c < sv.size() && sv(c) > 1e-10) continue;
      RVector v = embed * svd.matrixV().col(c);
      for (int tm = j.value; tm >= -j.value; tm -= 2) {
        out.vectors.col(col) = v;
        out.columns.push_back({j, tm, alpha});
        ++col;
        if (tm > -j.value) {
          const double norm = std::sqrt(0.25 * (j.value + tm) * (j.value - tm + 2));
          v = lower * v / norm;
        }
      }
      ++alpha;
    }
  }
  require(col == dim, "spin_basis: decomposition did not span the space");
  return out;
}

CMatrix entangled_sector_basis(int copies, int max_twice_j) {
  if (max_twice_j < 0) max_twice_j = copies;
  const SpinBasis basis = spin_basis(copies);
  const int dim = 1 << copies;
  std::vector<RVector> cols;
  for (TwiceJ j : j_ladder(copies)) {
    if (j.value > max_twice_j) break;
    std::vector<Eigen::Index> members;
    int mult = 0;
    for (std::size_t c = 0; c < basis.columns.size(); ++c) {
      if (basis.columns[c].j == j) {
        members.push_back(static_cast<Eigen::Index>(c));
        mult = std::max(mult, basis.columns[c].alpha + 1);
      }
    }
    for (int tm = j.value; tm >= -j.value; tm -= 2) {
      for (int tm2 = j.value; tm2 >= -j.value; tm2 -= 2) {
        RVector e = RVector::Zero(static_cast<Eigen::Index>(dim) * dim);
        for (Eigen::Index a : members) {
          if (basis.columns[static_cast<std::size_t>(a)].twice_m != tm) continue;
          for (Eigen::Index b : members) {
            if (basis.columns[static_cast<std::size_t>(b)].twice_m != tm2 ||
                basis.columns[static_cast<std::size_t>(b)].alpha != basis.columns[static_cast<std::size_t>(a)].alpha) {
              continue;
            }
            for (int x = 0; x < dim; ++x) {
              e.segment(static_cast<Eigen::Index>(x) * dim, dim) += basis.vectors(x, a) * basis.vectors.col(b);
            }
          }
        }
        cols.push_back(e / std::sqrt(static_cast<double>(mult)));
      }
    }
  }
  CMatrix out(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = cols[c].cast<cplx>();
  return out;
}

CVector entangled_state(const CMatrix& u, int copies) {
  const CMatrix power = linalg::tensor_power(u, copies);
  const auto dim = power.rows();
  CVector v(dim * dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) v(a * dim + b) = power(a, b);
  }
  return v / std::sqrt(static_cast<double>(dim));
}

CMatrix entangled_economical_isometry(int n, int m) {
  require(n >= 1 && m >= n && (m - n) % 2 == 0, "entangled isometry: need N <= M of equal parity");
  return entangled_sector_basis(m, n);
}

double entangled_economical_fidelity(int n, int m, int polar_nodes, int azimuth_points) {
  if (polar_nodes <= 0) polar_nodes = n + m + 2;
  if (azimuth_points <= 0) azimuth_points = 2 * (n + m) + 2;
  const CMatrix v = entangled_economical_isometry(n, m);
  const CMatrix en = entangled_sector_basis(n);
  double f = 0.0;
  for (const auto& node : su2_quadrature(polar_nodes, azimuth_points)) {
    const CVector in = en.adjoint() * entangled_state(node.u, n);
    f += node.weight * std::norm(entangled_state(node.u, m).dot(v * in));
  }
  return f;
}

double entangled_mp_fidelity(int n, int k, int m) {
  require(k >= 1 && k <= m && (m - k) % 2 == 0, "entangled_mp_fidelity: need K <= M of equal parity");
  const CMatrix en = entangled_sector_basis(n);
  const CMatrix ek = entangled_sector_basis(k);
  const CMatrix v = entangled_economical_isometry(k, m);
  // eta = sum_j d_j psi^{(j,N)} = sum_j sqrt(d_j) sum_m e_{j,m,m}.
  CVector eta = CVector::Zero(en.cols());
  {
    Eigen::Index c = 0;
    for (TwiceJ j : j_ladder(n)) {
      const int d = j.dimension();
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b, ++c) {
          if (a == b) eta(c) = std::sqrt(static_cast<double>(d));
        }
      }
    }
  }
  const CVector eta_full = en * eta;
  const auto nodes = su2_quadrature(n + k + m + 2, 2 * (n + k + m) + 2);
  const auto count = static_cast<Eigen::Index>(nodes.size());
  const int half = 1 << n;
  CMatrix povm(en.cols(), count), prep(v.rows(), count), psi_n(en.cols(), count), psi_m(v.rows(), count);
  std::vector<double> w;
  for (Eigen::Index q = 0; q < count; ++q) {
    const auto& node = nodes[static_cast<std::size_t>(q)];
    w.push_back(node.weight);
    const CMatrix act = linalg::kron(linalg::tensor_power(node.u, n), CMatrix::Identity(half, half));
    povm.col(q) = en.adjoint() * (act * eta_full);
    prep.col(q) = v * (ek.adjoint() * entangled_state(node.u, k));
    psi_n.col(q) = en.adjoint() * entangled_state(node.u, n);
    psi_m.col(q) = entangled_state(node.u, m);
  }
  return paired_average(w, povm, prep, w, psi_n, psi_m);
}

CMatrix finite_set_fidelity_operator(const finiteset::StateSet& set, int n, int m) {
  const auto vn = finiteset::span_vectors(set, n);
  const auto vm = finiteset::span_vectors(set, m);
  FamilyQuadrature family;
  for (int x = 0; x < set.size(); ++x) {
    family.push_back({set.priors()[static_cast<std::size_t>(x)], vn[static_cast<std::size_t>(x)],
                      vm[static_cast<std::size_t>(x)]});
  }
  return fidelity_operator(family);
}

DenseChannel finite_set_naive_channel(const finiteset::StateSet& set, const finiteset::Discrimination& disc,
                                      int m) {
  const auto vm = finiteset::span_vectors(set, m);
  const auto d_in = static_cast<int>(disc.povm.front().rows());
  const auto d_out = static_cast<int>(vm.front().size());
  CMatrix choi = CMatrix::Zero(static_cast<Eigen::Index>(d_in) * d_out, static_cast<Eigen::Index>(d_in) * d_out);
  for (std::size_t y = 0; y < disc.povm.size(); ++y) {
    choi += linalg::kron(CMatrix(disc.povm[y].transpose()), linalg::projector(vm[y]));
  }
  return DenseChannel(linalg::hermitian_part(choi), d_in, d_out);
}

}  // namespace clonekit::oracle
