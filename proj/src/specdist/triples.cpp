#include "specdist/triples.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "specdist/error.hpp"

namespace specdist {

namespace {

constexpr double kInvariantTol = 1e-10;
constexpr double kGramConditionLimit = 1e8;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

double sparse_hermitian_defect(const SMatrix& m) {
  const double scale = std::max(1.0, m.norm());
  return SMatrix(m - SMatrix(m.adjoint())).norm() / scale;
}

CMatrix dense(const SMatrix& m) { return CMatrix(m); }

// Least-squares coordinates of `target` in span(mats) with Frobenius residual.
template <class Mat>
std::pair<RVector, double> span_coordinates(const std::vector<Mat>& mats, const Mat& target) {
  const int m = static_cast<int>(mats.size());
  RMatrix gram(m, m);
  RVector rhs(m);
  for (int k = 0; k < m; ++k) {
    for (int l = k; l < m; ++l) {
      gram(k, l) = gram(l, k) = trace_inner(mats[k], mats[l]).real();
    }
    rhs(k) = trace_inner(mats[k], target).real();
  }
  const RVector x = gram.ldlt().solve(rhs);
  Mat recon = target * cplx(0.0);
  for (int k = 0; k < m; ++k) recon = recon + mats[k] * cplx(x(k));
  Mat diff = recon - target;
  return {x, static_cast<double>(diff.norm())};
}

}  // namespace

void validate_metric(const MetricSpace& x) {
  const int n = x.size;
  if (n < 1 || x.g.rows() != n || x.g.cols() != n) {
    fail(ErrorCode::Validation, "metric: g must be a size x size matrix with size >= 1");
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::isfinite(x.g(i, j))) scale = std::max(scale, std::abs(x.g(i, j)));
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int i = 0; i < n; ++i) {
    if (x.g(i, i) != 0.0) {
      std::ostringstream os;
      os << "metric: diagonal entry g[" << i << "][" << i << "] must be 0";
      fail(ErrorCode::Validation, os.str());
    }
    for (int j = 0; j < n; ++j) {
      const double a = x.g(i, j), b = x.g(j, i);
      if (std::isnan(a)) fail(ErrorCode::Validation, "metric: NaN entry");
      const bool sym = (std::isinf(a) && std::isinf(b)) || std::abs(a - b) <= tol;
      if (!sym) {
        std::ostringstream os;
        os << "metric: not symmetric at (" << i << "," << j << ")";
        fail(ErrorCode::Validation, os.str());
      }
      if (i != j && !(a > 0.0)) {
        std::ostringstream os;
        os << "metric: off-diagonal entry g[" << i << "][" << j << "] must be positive";
        fail(ErrorCode::Validation, os.str());
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double via = x.g(i, k) + x.g(k, j);
        if (x.g(i, j) > via + tol) {
          std::ostringstream os;
          os << "metric: triangle inequality fails for g[" << i << "][" << j << "] via " << k;
          fail(ErrorCode::Validation, os.str());
        }
      }
}

MetricSpace make_metric(const RMatrix& g) {
  MetricSpace x{static_cast<int>(g.rows()), g};
  validate_metric(x);
  return x;
}

RMatrix basis_gram(const Triple& t) {
  const int m = t.algebra_dim();
  RMatrix s(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) s(k, l) = s(l, k) = trace_inner(t.basis[k], t.basis[l]).real();
  return s;
}

void validate_triple(const Triple& t) {
  const int n = t.dim;
  if (n < 1) fail(ErrorCode::Validation, "triple: dim must be >= 1");
  if (t.dirac.rows() != n || t.dirac.cols() != n) {
    fail(ErrorCode::DimensionMismatch, "triple: dirac must be dim x dim");
  }
  if (sparse_hermitian_defect(t.dirac) > kHermitianTol) {
    fail(ErrorCode::NotHermitian, "triple: dirac operator is not Hermitian");
  }
  if (t.basis.empty()) fail(ErrorCode::Validation, "triple: algebra basis is empty");
  for (size_t k = 0; k < t.basis.size(); ++k) {
    const auto& b = t.basis[k];
    if (b.rows() != n || b.cols() != n) {
      fail(ErrorCode::DimensionMismatch, "triple: algebra basis element has wrong size");
    }
    if (sparse_hermitian_defect(b) > kHermitianTol) {
      std::ostringstream os;
      os << "triple: algebra basis element " << k << " is not Hermitian";
      fail(ErrorCode::NotHermitian, os.str());
    }
  }
  if (!t.defining.empty()) {
    if (t.defining.size() != t.basis.size()) {
      fail(ErrorCode::Validation, "triple: defining basis must match the algebra basis in length");
    }
    const auto rows = t.defining.front().rows();
    for (const auto& a : t.defining) {
      if (a.rows() != rows || a.cols() != rows) {
        fail(ErrorCode::DimensionMismatch, "triple: defining basis matrices must share one square size");
      }
      if (!is_hermitian(a)) fail(ErrorCode::NotHermitian, "triple: defining basis element is not Hermitian");
    }
  }

  const RMatrix s = basis_gram(t);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(s, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(s.rows() - 1);
  if (!(lo > 0.0) || hi / lo > kGramConditionLimit) {
    fail(ErrorCode::Validation, "triple: algebra basis is not linearly independent (Gram condition > 1e8)");
  }

  if (t.grading) {
    const SMatrix& g = *t.grading;
    if (g.rows() != n || g.cols() != n) fail(ErrorCode::DimensionMismatch, "triple: grading must be dim x dim");
    const double dscale = std::max(1.0, t.dirac.norm());
    if (sparse_hermitian_defect(g) > kInvariantTol) fail(ErrorCode::Validation, "triple: grading is not self-adjoint");
    if (SMatrix(g * g - sparse_identity(n)).norm() > kInvariantTol * std::sqrt(double(n))) {
      fail(ErrorCode::Validation, "triple: grading does not square to the identity");
    }
    if (SMatrix(g * t.dirac + t.dirac * g).norm() > kInvariantTol * dscale) {
      fail(ErrorCode::Validation, "triple: grading does not anticommute with the Dirac operator");
    }
    for (const auto& b : t.basis) {
      if (SMatrix(g * b - b * g).norm() > kInvariantTol * std::max(1.0, b.norm())) {
        fail(ErrorCode::Validation, "triple: grading does not commute with the algebra");
      }
    }
  }
}

Triple make_triple(std::string label, SMatrix dirac, std::optional<SMatrix> grading,
                   std::vector<SMatrix> basis, std::vector<CMatrix> defining, bool real_linear) {
  Triple t;
  t.label = std::move(label);
  t.dim = static_cast<int>(dirac.rows());
  t.dirac = std::move(dirac);
  t.grading = std::move(grading);
  t.basis = std::move(basis);
  t.defining = std::move(defining);
  t.real_linear = real_linear;
  for (auto& b : t.basis) b.makeCompressed();
  t.dirac.makeCompressed();
  validate_triple(t);
  const auto [x, residual] = span_coordinates(t.basis, sparse_identity(t.dim));
  (void)x;
  t.unital = residual <= kInvariantTol * std::sqrt(double(t.dim));
  return t;
}

RVector identity_coordinates(const Triple& t) {
  if (!t.defining.empty()) {
    const int n = t.state_dim();
    const auto [x, residual] = span_coordinates(t.defining, CMatrix(CMatrix::Identity(n, n)));
    if (residual <= kInvariantTol * std::sqrt(double(n))) return x;
  } else {
    const auto [x, residual] = span_coordinates(t.basis, sparse_identity(t.dim));
    if (residual <= kInvariantTol * std::sqrt(double(t.dim))) return x;
  }
  fail(ErrorCode::NonUnital, "triple '" + t.label + "': the unit is not in the algebra span");
}

SMatrix element(const Triple& t, const RVector& c) {
  if (c.size() != t.algebra_dim()) fail(ErrorCode::DimensionMismatch, "element: coefficient count mismatch");
  SMatrix a(t.dim, t.dim);
  for (int k = 0; k < t.algebra_dim(); ++k)
    if (c(k) != 0.0) a += t.basis[k] * cplx(c(k));
  return a;
}

std::vector<CMatrix> diagonal_basis(int n) {
  std::vector<CMatrix> out;
  for (int k = 0; k < n; ++k) {
    CMatrix e = CMatrix::Zero(n, n);
    e(k, k) = 1.0;
    out.push_back(e);
  }
  return out;
}

std::vector<CMatrix> matrix_basis(int n) {
  std::vector<CMatrix> out = diagonal_basis(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix x = CMatrix::Zero(n, n), y = CMatrix::Zero(n, n);
      x(j, k) = x(k, j) = 1.0;
      y(j, k) = cplx(0, -1);
      y(k, j) = cplx(0, 1);
      out.push_back(x);
      out.push_back(y);
    }
  return out;
}

std::vector<CMatrix> pauli_basis() {
  return {pauli::identity(), pauli::sigma1(), pauli::sigma2(), pauli::sigma3()};
}

std::vector<SMatrix> to_sparse(const std::vector<CMatrix>& mats) {
  std::vector<SMatrix> out;
  for (const auto& m : mats) out.push_back(to_sparse(m));
  return out;
}

std::vector<SMatrix> amplify(const std::vector<CMatrix>& basis, int m) {
  std::vector<SMatrix> out;
  const SMatrix id = sparse_identity(m);
  for (const auto& b : basis) out.push_back(kron(to_sparse(b), id));
  return out;
}

Triple two_point_triple(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::InvalidArgument, "two_point_triple: lambda must be positive");
  }
  return make_triple("two_point", to_sparse(CMatrix(pauli::sigma1() / (2.0 * lambda))),
                     to_sparse(pauli::sigma3()), to_sparse(diagonal_basis(2)));
}

Triple simplex_triple() {
  CMatrix dplus = CMatrix::Zero(3, 3);
  dplus(1, 0) = dplus(2, 1) = dplus(0, 2) = 1.0;
  CMatrix d = CMatrix::Zero(6, 6);
  d.block(0, 3, 3, 3) = dplus.transpose();
  d.block(3, 0, 3, 3) = dplus;
  CMatrix gamma = CMatrix::Identity(6, 6);
  gamma.block(3, 3, 3, 3) *= -1.0;
  std::vector<SMatrix> basis;
  for (const auto& e : diagonal_basis(3)) basis.push_back(to_sparse(direct_sum(e, e)));
  return make_triple("simplex3", to_sparse(d), to_sparse(gamma), std::move(basis), diagonal_basis(3));
}

Triple finite_metric_triple(const MetricSpace& x) {
  validate_metric(x);
  const int n = x.size;
  if (n < 2) fail(ErrorCode::InvalidArgument, "finite_metric_triple: need at least two points");
  const int dim = 2 * n * (n - 1);
  std::vector<Eigen::Triplet<cplx>> d, g;
  std::vector<std::vector<Eigen::Triplet<cplx>>> b(n);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int r = 2 * p;
      if (std::isfinite(x.g(i, j))) {
        d.emplace_back(r, r + 1, 1.0 / x.g(i, j));
        d.emplace_back(r + 1, r, 1.0 / x.g(i, j));
      }
      g.emplace_back(r, r, 1.0);
      g.emplace_back(r + 1, r + 1, -1.0);
      b[i].emplace_back(r, r, 1.0);
      b[j].emplace_back(r + 1, r + 1, 1.0);
      ++p;
    }
  SMatrix dm(dim, dim), gm(dim, dim);
  dm.setFromTriplets(d.begin(), d.end());
  gm.setFromTriplets(g.begin(), g.end());
  std::vector<SMatrix> basis;
  for (int k = 0; k < n; ++k) {
    SMatrix e(dim, dim);
    e.setFromTriplets(b[k].begin(), b[k].end());
    basis.push_back(e);
  }
  return make_triple("finite_metric", dm, gm, std::move(basis), diagonal_basis(n));
}

Triple bloch_conjugation_triple() {
  // M_2 as a real vector space with orthonormal basis {s_k, i s_k} for the
  // inner product Re Tr(x* y) / 2. Left multiplication and D(m) = m* / 2 are
  // real symmetric there; the factor 1/2 makes ||[D, a]|| = ||v||_2.
  std::vector<CMatrix> e;
  for (int k = 0; k < 4; ++k) e.push_back(pauli::sigma(k));
  for (int k = 0; k < 4; ++k) e.push_back(cplx(0, 1) * pauli::sigma(k));
  auto real_matrix = [&](auto&& op) {
    CMatrix m = CMatrix::Zero(8, 8);
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) m(a, b) = 0.5 * (e[a].adjoint() * op(e[b])).trace().real();
    return m;
  };
  const CMatrix d = real_matrix([](const CMatrix& m) { return CMatrix(0.5 * m.adjoint()); });
  std::vector<SMatrix> basis;
  for (const auto& s : pauli_basis()) {
    basis.push_back(to_sparse(real_matrix([&](const CMatrix& m) { return CMatrix(s * m); }), 1e-15));
  }
  return make_triple("bloch_conjugation", to_sparse(d, 1e-15), std::nullopt, std::move(basis), pauli_basis(),
                     true);
}

Triple bloch_flip_triple() {
  CMatrix d = CMatrix::Zero(4, 4);
  d.block(0, 2, 2, 2) = CMatrix::Identity(2, 2);
  d.block(2, 0, 2, 2) = CMatrix::Identity(2, 2);
  CMatrix gamma = CMatrix::Identity(4, 4);
  gamma.block(2, 2, 2, 2) *= -1.0;
  std::vector<SMatrix> basis;
  for (const auto& s : pauli_basis()) basis.push_back(to_sparse(direct_sum(s, CMatrix(CMatrix::Zero(2, 2)))));
  return make_triple("bloch_flip", to_sparse(d), to_sparse(gamma), std::move(basis), pauli_basis());
}

Triple bloch_moyal_triple() {
  CMatrix dplus = CMatrix::Zero(2, 2);
  dplus(0, 1) = 1.0;
  CMatrix d = CMatrix::Zero(4, 4);
  d.block(0, 2, 2, 2) = dplus.adjoint();
  d.block(2, 0, 2, 2) = dplus;
  CMatrix gamma = CMatrix::Identity(4, 4);
  gamma.block(2, 2, 2, 2) *= -1.0;
  std::vector<SMatrix> basis;
  for (const auto& s : pauli_basis()) basis.push_back(to_sparse(direct_sum(s, s)));
  return make_triple("bloch_truncated_moyal", to_sparse(d), to_sparse(gamma), std::move(basis), pauli_basis());
}

Triple diagonal_triple(const CMatrix& dirac, std::string label) {
  const int n = static_cast<int>(dirac.rows());
  return make_triple(std::move(label), to_sparse(dirac), std::nullopt, to_sparse(diagonal_basis(n)));
}

ProductTriple product_triple(const Triple& t1, const Triple& t2) {
  if (!t1.grading) fail(ErrorCode::MissingGrading, "product_triple: left factor '" + t1.label + "' is not even");
  const SMatrix id1 = sparse_identity(t1.dim), id2 = sparse_identity(t2.dim);
  SMatrix d = kron(t1.dirac, id2) + kron(*t1.grading, t2.dirac);
  std::optional<SMatrix> g;
  if (t2.grading) g = kron(*t1.grading, *t2.grading);
  std::vector<SMatrix> basis;
  for (const auto& b : t1.basis)
    for (const auto& c : t2.basis) basis.push_back(kron(b, c));
  std::vector<CMatrix> defining;
  if (!t1.defining.empty() || !t2.defining.empty()) {
    auto canonical = [](const Triple& t) {
      if (!t.defining.empty()) return t.defining;
      std::vector<CMatrix> out;
      for (const auto& b : t.basis) out.push_back(dense(b));
      return out;
    };
    const auto a1 = canonical(t1), a2 = canonical(t2);
    for (const auto& a : a1)
      for (const auto& b : a2) defining.push_back(kron(a, b));
  }
  ProductTriple p{t1, t2,
                  make_triple(t1.label + "*" + t2.label, std::move(d), std::move(g), std::move(basis),
                              std::move(defining), t1.real_linear || t2.real_linear)};
  return p;
}

Triple evenize(const Triple& t) {
  if (t.grading) fail(ErrorCode::AlreadyEven, "evenize: triple '" + t.label + "' already has a grading");
  const SMatrix s1 = to_sparse(pauli::sigma1()), s3 = to_sparse(pauli::sigma3());
  const SMatrix id2 = sparse_identity(2);
  std::vector<SMatrix> basis;
  for (const auto& b : t.basis) basis.push_back(kron(b, id2));
  std::vector<CMatrix> defining = t.defining;
  if (defining.empty())
    for (const auto& b : t.basis) defining.push_back(dense(b));
  return make_triple(t.label + "_even", kron(t.dirac, s1), kron(sparse_identity(t.dim), s3), std::move(basis),
                     std::move(defining), t.real_linear);
}

void validate_density(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) fail(ErrorCode::Validation, "state: density must be square");
  if ((rho - rho.adjoint()).norm() > kInvariantTol) fail(ErrorCode::Validation, "state: density is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > kInvariantTol) {
    fail(ErrorCode::Validation, "state: density trace differs from 1");
  }
  const RVector ev = hermitian_eigenvalues((rho + rho.adjoint()) * 0.5);
  if (ev(0) < -kInvariantTol) fail(ErrorCode::Validation, "state: density has a negative eigenvalue");
}

State State::density(const CMatrix& rho, std::string label) {
  validate_density(rho);
  State s;
  s.kind = Kind::Density;
  s.rho = (rho + rho.adjoint()) * 0.5;
  s.label = std::move(label);
  return s;
}

State State::from_values(const RVector& values, std::string label) {
  State s;
  s.kind = Kind::Values;
  s.values = values;
  s.label = std::move(label);
  return s;
}

bool pairs_on_representation(const Triple& t, const State& s) {
  if (s.kind != State::Kind::Density) return false;
  if (!t.defining.empty() && s.rho.rows() == t.state_dim()) return false;
  return s.rho.rows() == t.dim;
}

RVector pairing(const Triple& t, const State& s) {
  const int m = t.algebra_dim();
  RVector out(m);
  if (s.kind == State::Kind::Values) {
    if (s.values.size() != m) {
      fail(ErrorCode::DimensionMismatch, "state: coefficient functional length differs from the algebra basis");
    }
    return s.values;
  }
  if (!t.defining.empty() && s.rho.rows() == t.state_dim()) {
    for (int k = 0; k < m; ++k) out(k) = (s.rho * t.defining[k]).trace().real();
    return out;
  }
  if (s.rho.rows() == t.dim) {
    for (int k = 0; k < m; ++k) out(k) = trace_product(s.rho, t.basis[k]).real();
    return out;
  }
  std::ostringstream os;
  os << "state: density of size " << s.rho.rows() << " does not fit triple '" << t.label << "' (dim " << t.dim;
  if (!t.defining.empty()) os << ", defining size " << t.state_dim();
  os << ")";
  fail(ErrorCode::DimensionMismatch, os.str());
}

CMatrix bloch_density(const RVector& x) {
  if (x.size() != 3) fail(ErrorCode::InvalidArgument, "bloch: vector must have 3 components");
  if (x.norm() > 1.0 + 1e-12) fail(ErrorCode::OutOfBall, "bloch: vector lies outside the unit ball");
  CMatrix rho = pauli::identity();
  for (int k = 0; k < 3; ++k) rho += x(k) * pauli::sigma(k + 1);
  return rho * 0.5;
}

State state_from_bloch(const RVector& x) { return State::density(bloch_density(x), "bloch"); }

State state_from_simplex(const RVector& p) {
  if (p.size() < 1) fail(ErrorCode::NotProbability, "simplex: empty probability vector");
  for (int k = 0; k < p.size(); ++k)
    if (!(p(k) >= -1e-12)) fail(ErrorCode::NotProbability, "simplex: negative probability");
  if (std::abs(p.sum() - 1.0) > kInvariantTol) fail(ErrorCode::NotProbability, "simplex: probabilities do not sum to 1");
  CMatrix rho = CMatrix::Zero(p.size(), p.size());
  for (int k = 0; k < p.size(); ++k) rho(k, k) = std::max(0.0, p(k));
  return State::density(rho, "simplex");
}

State state_pure(const CVector& v) {
  if (std::abs(v.norm() - 1.0) > kInvariantTol) fail(ErrorCode::Validation, "pure state: vector is not normalized");
  return State::density(v * v.adjoint(), "pure");
}

std::pair<CMatrix, CMatrix> marginals(const CMatrix& rho, int n1, int n2) {
  return {partial_trace_right(rho, n1, n2), partial_trace_left(rho, n1, n2)};
}

std::pair<State, State> marginals(const ProductTriple& p, const State& s) {
  if (s.kind == State::Kind::Density) {
    const int n1 = p.left.state_dim(), n2 = p.right.state_dim();
    if (s.rho.rows() != n1 * n2) {
      fail(ErrorCode::DimensionMismatch, "marginals: density does not split over the product factors");
    }
    auto [r1, r2] = marginals(s.rho, n1, n2);
    return {State::density(r1, "marginal1"), State::density(r2, "marginal2")};
  }
  const int m1 = p.left.algebra_dim(), m2 = p.right.algebra_dim();
  if (s.values.size() != m1 * m2) fail(ErrorCode::DimensionMismatch, "marginals: coefficient length mismatch");
  const RVector e1 = identity_coordinates(p.left), e2 = identity_coordinates(p.right);
  RVector v1 = RVector::Zero(m1), v2 = RVector::Zero(m2);
  for (int j = 0; j < m1; ++j)
    for (int k = 0; k < m2; ++k) {
      v1(j) += e2(k) * s.values(j * m2 + k);
      v2(k) += e1(j) * s.values(j * m2 + k);
    }
  return {State::from_values(v1, "marginal1"), State::from_values(v2, "marginal2")};
}

State product_state(const ProductTriple& p, const State& s1, const State& s2) {
  const bool canonical1 = s1.kind == State::Kind::Density && s1.rho.rows() == p.left.state_dim();
  const bool canonical2 = s2.kind == State::Kind::Density && s2.rho.rows() == p.right.state_dim();
  if (canonical1 && canonical2) return State::density(kron(s1.rho, s2.rho), "product");
  const RVector a = pairing(p.left, s1), b = pairing(p.right, s2);
  RVector v(a.size() * b.size());
  for (int j = 0; j < a.size(); ++j)
    for (int k = 0; k < b.size(); ++k) v(j * b.size() + k) = a(j) * b(k);
  return State::from_values(v, "product");
}

CMatrix peres_partial_transpose(const CMatrix& rho, int n1, int n2) { return partial_transpose_left(rho, n1, n2); }

}  // namespace specdist
