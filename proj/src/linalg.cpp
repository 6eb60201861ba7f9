#include "clonekit/linalg.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "clonekit/error.hpp"

namespace clonekit::linalg {

namespace {

template <class F>
CMatrix spectral_map(const CMatrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  const RVector w = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

RVector eigenvalues(const CMatrix& a) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitian_part(a), Eigen::EigenvaluesOnly)
      .eigenvalues();
}

}  // namespace

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

CMatrix psd_sqrt(const CMatrix& a) {
  return spectral_map(a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

CMatrix psd_inv_sqrt(const CMatrix& a, double floor) {
  return spectral_map(a, [floor](double x) { return x > floor ? 1.0 / std::sqrt(x) : 0.0; });
}

CMatrix positive_part(const CMatrix& a) {
  return spectral_map(a, [](double x) { return std::max(x, 0.0); });
}

CMatrix hermitian_sign(const CMatrix& a) {
  return spectral_map(a, [](double x) { return x >= 0.0 ? 1.0 : -1.0; });
}

double trace_norm(const CMatrix& hermitian) { return eigenvalues(hermitian).cwiseAbs().sum(); }

double min_eigenvalue(const CMatrix& hermitian) { return eigenvalues(hermitian).minCoeff(); }

double max_eigenvalue(const CMatrix& hermitian) { return eigenvalues(hermitian).maxCoeff(); }

CVector top_eigenvector(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(hermitian));
  return es.eigenvectors().col(es.eigenvalues().size() - 1);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CVector tensor_power(const CVector& v, int copies) {
  require(copies >= 0, "tensor_power: negative copy count");
  CVector out = CVector::Ones(1);
  for (int k = 0; k < copies; ++k) out = kron(out, v);
  return out;
}

CMatrix tensor_power(const CMatrix& u, int copies) {
  require(copies >= 0, "tensor_power: negative copy count");
  CMatrix out = CMatrix::Identity(1, 1);
  for (int k = 0; k < copies; ++k) out = kron(out, u);
  return out;
}

CMatrix partial_trace_out(const CMatrix& op, int d_in, int d_out) {
  require(op.rows() == static_cast<Eigen::Index>(d_in) * d_out && op.cols() == op.rows(),
          "partial_trace_out: dimension mismatch");
  CMatrix out = CMatrix::Zero(d_in, d_in);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      out(i, j) = op.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out,
                           d_out, d_out)
                      .trace();
    }
  }
  return out;
}

CMatrix partial_trace_in(const CMatrix& op, int d_in, int d_out) {
  require(op.rows() == static_cast<Eigen::Index>(d_in) * d_out && op.cols() == op.rows(),
          "partial_trace_in: dimension mismatch");
  CMatrix out = CMatrix::Zero(d_out, d_out);
  for (int i = 0; i < d_in; ++i) {
    out += op.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(i) * d_out, d_out,
                    d_out);
  }
  return out;
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  return v.normalized();
}

CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = cplx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : cplx(1.0);
  }
  return q;
}

}  // namespace clonekit::linalg
