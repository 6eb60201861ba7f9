#pragma once

// Dense complex linear algebra helpers on top of Eigen. Bipartite operators
// use the input-outer ordering: index (i, a) -> i * d_out + a.

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace clonekit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace linalg {

CMatrix hermitian_part(const CMatrix& a);

// Functions of a Hermitian matrix through its eigendecomposition. Eigenvalues
// below `floor` are treated as zero (pseudo-inverse on the support).
CMatrix psd_sqrt(const CMatrix& a);
CMatrix psd_inv_sqrt(const CMatrix& a, double floor = 1e-13);
CMatrix positive_part(const CMatrix& a);
// Sign of a Hermitian matrix (zero eigenvalues map to +1).
CMatrix hermitian_sign(const CMatrix& a);

double trace_norm(const CMatrix& hermitian);
double min_eigenvalue(const CMatrix& hermitian);
double max_eigenvalue(const CMatrix& hermitian);
CVector top_eigenvector(const CMatrix& hermitian);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);
CVector tensor_power(const CVector& v, int copies);
CMatrix tensor_power(const CMatrix& u, int copies);

// Tr_out of an operator on C^{d_in} (x) C^{d_out}.
CMatrix partial_trace_out(const CMatrix& op, int d_in, int d_out);
// Tr_in of an operator on C^{d_in} (x) C^{d_out}.
CMatrix partial_trace_in(const CMatrix& op, int d_in, int d_out);

CMatrix projector(const CVector& v);

// Haar-random pure state and unitary, driven by a caller-owned engine.
CVector random_state(int dim, std::mt19937_64& rng);
CMatrix random_unitary(int dim, std::mt19937_64& rng);

}  // namespace linalg
}  // namespace clonekit
