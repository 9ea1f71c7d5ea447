#pragma once

// Dense complex linear algebra used by every other module. Matrices are plain
// Eigen::MatrixXcd values; the helpers here add the checks and conventions the
// rest of the library relies on (Hermiticity tolerance, A-major Kronecker
// layout, ascending spectra).

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace specdist {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using SMatrix = Eigen::SparseMatrix<cplx>;

struct HermitianEig {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // columns, unitary
};

// Relative tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Frobenius-norm asymmetry ||M - M*|| relative to max(1, ||M||).
double hermitian_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianTol);

/// Eigendecomposition of a Hermitian matrix. The input is checked against
/// kHermitianTol, then symmetrized as (M + M*)/2 before decomposition.
/// Throws Error(NotHermitian) or Error(NoConvergence).
HermitianEig hermitian_eig(const CMatrix& m);

/// Eigenvalues only, ascending. Same checks as hermitian_eig.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Largest singular value. Hermitian inputs use max |eigenvalue|; everything
/// else goes through the spectrum of M*M.
double operator_norm(const CMatrix& m);

/// Kronecker product, A-major: (A ⊗ B)[(i*p + k), (j*q + l)] = A(i,j) B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Block-diagonal direct sum.
CMatrix direct_sum(std::span<const CMatrix> blocks);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

/// [D, a] = D a - a D. Throws Error(DimensionMismatch) on incompatible shapes.
CMatrix commutator(const CMatrix& d, const CMatrix& a);
CMatrix anticommutator(const CMatrix& d, const CMatrix& a);

/// <a, b>_Tr = Tr(a* b).
cplx trace_inner(const CMatrix& a, const CMatrix& b);

/// <a, b>_HS = Tr(a* b) / n for n x n matrices. Used by the Bloch and Berezin
/// code, which follow the normalized convention.
cplx hs_inner(const CMatrix& a, const CMatrix& b);

/// Partial traces of an operator on C^{n1} ⊗ C^{n2} (A-major layout).
CMatrix partial_trace_right(const CMatrix& m, int n1, int n2);  // Tr over factor 2
CMatrix partial_trace_left(const CMatrix& m, int n1, int n2);   // Tr over factor 1

/// Transpose on the first tensor factor.
CMatrix partial_transpose_left(const CMatrix& m, int n1, int n2);

/// Sparse counterparts used for triples whose representation space is large.
SMatrix to_sparse(const CMatrix& m, double drop_tol = 0.0);
SMatrix kron(const SMatrix& a, const SMatrix& b);
SMatrix direct_sum(std::span<const SMatrix> blocks);
SMatrix sparse_identity(int n);
cplx trace_inner(const SMatrix& a, const SMatrix& b);
/// Tr(rho * b) for a dense rho and sparse b.
cplx trace_product(const CMatrix& rho, const SMatrix& b);
double frobenius_norm(const SMatrix& m);

namespace pauli {
CMatrix identity();
CMatrix sigma1();
CMatrix sigma2();
CMatrix sigma3();
/// sigma(k) for k = 0..3 with sigma(0) = 1.
CMatrix sigma(int k);
}  // namespace pauli

}  // namespace specdist
