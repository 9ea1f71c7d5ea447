#include "specdist/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "specdist/error.hpp"

namespace specdist {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::MissingGrading: return "MissingGrading";
    case ErrorCode::AlreadyEven: return "AlreadyEven";
    case ErrorCode::NonUnital: return "NonUnital";
    case ErrorCode::RhoNotInAlgebra: return "RhoNotInAlgebra";
    case ErrorCode::OutOfBall: return "OutOfBall";
    case ErrorCode::NotProbability: return "NotProbability";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

CMatrix checked_symmetrize(const CMatrix& m) {
  require_square(m, "hermitian_eig");
  if (!is_hermitian(m)) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian (relative defect " << hermitian_defect(m) << ")";
    throw Error(ErrorCode::NotHermitian, os.str());
  }
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

double hermitian_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() / scale;
}

bool is_hermitian(const CMatrix& m, double rel_tol) { return hermitian_defect(m) <= rel_tol; }

HermitianEig hermitian_eig(const CMatrix& m) {
  const CMatrix h = checked_symmetrize(m);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "hermitian_eig: QL iteration did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix h = checked_symmetrize(m);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "hermitian_eigenvalues: QL iteration did not converge");
  }
  return solver.eigenvalues();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && is_hermitian(m)) {
    const RVector ev = hermitian_eigenvalues(m);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  const CMatrix gram = m.rows() >= m.cols() ? CMatrix(m.adjoint() * m) : CMatrix(m * m.adjoint());
  const RVector ev = hermitian_eigenvalues((gram + gram.adjoint()) * 0.5);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix direct_sum(std::span<const CMatrix> blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  const CMatrix blocks[2] = {a, b};
  return direct_sum(std::span<const CMatrix>(blocks, 2));
}

CMatrix commutator(const CMatrix& d, const CMatrix& a) {
  if (d.rows() != d.cols() || a.rows() != a.cols() || d.rows() != a.rows()) {
    std::ostringstream os;
    os << "commutator: incompatible shapes " << d.rows() << "x" << d.cols() << " and " << a.rows()
       << "x" << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return d * a - a * d;
}

CMatrix anticommutator(const CMatrix& d, const CMatrix& a) {
  if (d.rows() != a.rows() || d.cols() != a.cols() || d.rows() != d.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "anticommutator: incompatible shapes");
  }
  return d * a + a * d;
}

cplx trace_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_inner: incompatible shapes");
  }
  // Tr(a* b) = sum_ij conj(a_ij) b_ij
  return (a.conjugate().cwiseProduct(b)).sum();
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  return trace_inner(a, b) / static_cast<double>(a.rows());
}

CMatrix partial_trace_right(const CMatrix& m, int n1, int n2) {
  if (m.rows() != n1 * n2 || m.cols() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch, "partial_trace_right: dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) out(i, j) += m(i * n2 + k, j * n2 + k);
  return out;
}

CMatrix partial_trace_left(const CMatrix& m, int n1, int n2) {
  if (m.rows() != n1 * n2 || m.cols() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch, "partial_trace_left: dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(n2, n2);
  for (int k = 0; k < n2; ++k)
    for (int l = 0; l < n2; ++l)
      for (int i = 0; i < n1; ++i) out(k, l) += m(i * n2 + k, i * n2 + l);
  return out;
}

CMatrix partial_transpose_left(const CMatrix& m, int n1, int n2) {
  if (m.rows() != n1 * n2 || m.cols() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch, "partial_transpose_left: dimension mismatch");
  }
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      out.block(j * n2, i * n2, n2, n2) = m.block(i * n2, j * n2, n2, n2);
  return out;
}

SMatrix to_sparse(const CMatrix& m, double drop_tol) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > drop_tol) trips.emplace_back(i, j, m(i, j));
  SMatrix out(m.rows(), m.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SMatrix kron(const SMatrix& a, const SMatrix& b) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SMatrix::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SMatrix::InnerIterator ib(b, kb); ib; ++ib)
          trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
  SMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SMatrix direct_sum(std::span<const SMatrix> blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  std::vector<Eigen::Triplet<cplx>> trips;
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    for (int k = 0; k < b.outerSize(); ++k)
      for (SMatrix::InnerIterator it(b, k); it; ++it) trips.emplace_back(r + it.row(), c + it.col(), it.value());
    r += b.rows();
    c += b.cols();
  }
  SMatrix out(rows, cols);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SMatrix sparse_identity(int n) {
  SMatrix out(n, n);
  out.setIdentity();
  return out;
}

cplx trace_inner(const SMatrix& a, const SMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_inner: incompatible shapes");
  }
  return SMatrix(a.conjugate().cwiseProduct(b)).sum();
}

cplx trace_product(const CMatrix& rho, const SMatrix& b) {
  if (rho.rows() != b.cols() || rho.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_product: incompatible shapes");
  }
  cplx acc = 0.0;
  for (int k = 0; k < b.outerSize(); ++k)
    for (SMatrix::InnerIterator it(b, k); it; ++it) acc += rho(it.col(), it.row()) * it.value();
  return acc;
}

double frobenius_norm(const SMatrix& m) { return m.norm(); }

namespace pauli {

CMatrix identity() { return CMatrix::Identity(2, 2); }

CMatrix sigma1() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix sigma2() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

CMatrix sigma3() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix sigma(int k) {
  switch (k) {
    case 0: return identity();
    case 1: return sigma1();
    case 2: return sigma2();
    case 3: return sigma3();
    default: throw Error(ErrorCode::InvalidArgument, "pauli::sigma: index must be 0..3");
  }
}

}  // namespace pauli

}  // namespace specdist
