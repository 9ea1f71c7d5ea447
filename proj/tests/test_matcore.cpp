#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "specdist/error.hpp"
#include "specdist/matcore.hpp"
#include "specdist/sampling.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using Catch::Matchers::WithinAbs;

namespace {

double naive_max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Plain loop Kronecker product, independent of the library routine.
CMatrix loop_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace

TEST_CASE("hermitian_eig sorts a diagonal spectrum", "[matcore]") {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 3;
  m(1, 1) = 1;
  m(2, 2) = 2;
  const HermitianEig e = hermitian_eig(m);
  CHECK_THAT(e.eigenvalues(0), WithinAbs(1, 1e-14));
  CHECK_THAT(e.eigenvalues(1), WithinAbs(2, 1e-14));
  CHECK_THAT(e.eigenvalues(2), WithinAbs(3, 1e-14));
}

TEST_CASE("hermitian_eig of sigma1", "[matcore]") {
  const HermitianEig e = hermitian_eig(pauli::sigma1());
  CHECK_THAT(e.eigenvalues(0), WithinAbs(-1, 1e-14));
  CHECK_THAT(e.eigenvalues(1), WithinAbs(1, 1e-14));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices", "[matcore]") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix m = random_hermitian(6, rng);
    const HermitianEig e = hermitian_eig(m);
    const CMatrix rebuilt = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() * e.eigenvectors.adjoint();
    CHECK(naive_max_abs_diff(rebuilt, m) <= 1e-10 * std::max(1.0, operator_norm(m)));
    CHECK(naive_max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, CMatrix::Identity(6, 6)) <= 1e-10);
    for (int i = 1; i < 6; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input", "[matcore]") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1;
  try {
    (void)hermitian_eig(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("operator_norm basics", "[matcore]") {
  CHECK(operator_norm(CMatrix::Zero(3, 3)) == 0.0);
  CHECK_THAT(operator_norm(pauli::sigma1()), WithinAbs(1, 1e-12));
  CHECK_THAT(operator_norm(pauli::sigma2()), WithinAbs(1, 1e-12));
}

TEST_CASE("commutator norm on the three point simplex is the largest gap", "[matcore]") {
  const Triple t = simplex_triple();
  const CMatrix d = CMatrix(t.dirac);
  Rng rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const double a[3] = {u(rng), u(rng), u(rng)};
    RVector c(3);
    c << a[0], a[1], a[2];
    const CMatrix elem = CMatrix(element(t, c));
    double gap = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gap = std::max(gap, std::abs(a[i] - a[j]));
    CHECK_THAT(operator_norm(commutator(d, elem)), WithinAbs(gap, 1e-10));
  }
}

TEST_CASE("operator_norm matches largest absolute eigenvalue and the C* identity", "[matcore]") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = random_hermitian(5, rng);
    const RVector ev = hermitian_eigenvalues(h);
    CHECK_THAT(operator_norm(h), WithinAbs(ev.cwiseAbs().maxCoeff(), 1e-10));
    const CMatrix m = random_hermitian(4, rng) + cplx(0, 1) * random_hermitian(4, rng) * random_hermitian(4, rng);
    const double n = operator_norm(m);
    CHECK_THAT(operator_norm(m.adjoint() * m), WithinAbs(n * n, 1e-9 * std::max(1.0, n * n)));
  }
}

TEST_CASE("kron agrees with an explicit loop and the mixed product rule", "[matcore]") {
  CHECK(naive_max_abs_diff(kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)), CMatrix::Identity(4, 4)) == 0);
  const CMatrix gs = kron(pauli::sigma3(), pauli::sigma1());
  CHECK(naive_max_abs_diff(gs.topLeftCorner(2, 2), pauli::sigma1()) == 0);
  CHECK(naive_max_abs_diff(gs.bottomRightCorner(2, 2), -pauli::sigma1()) == 0);

  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
    const CMatrix c = random_hermitian(2, rng), d = random_hermitian(3, rng);
    CHECK(naive_max_abs_diff(kron(a, b), loop_kron(a, b)) <= 1e-14);
    CHECK(naive_max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-10);
  }
}

TEST_CASE("sigma1 x sigma1 fixes the Bell vector", "[matcore]") {
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const CVector out = kron(pauli::sigma1(), pauli::sigma1()) * bell;
  CHECK((out - bell).norm() <= 1e-15);
}

TEST_CASE("commutator identities", "[matcore]") {
  const CMatrix f = pauli::sigma1();
  CHECK(commutator(f, CMatrix::Identity(2, 2)).norm() == 0);

  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 0.7;
  a(1, 1) = -0.4;
  const CMatrix c = commutator(f, a);
  CHECK(std::abs(c(0, 0)) == 0);
  CHECK(std::abs(c(1, 1)) == 0);
  CHECK_THAT(c(0, 1).real(), WithinAbs(-0.4 - 0.7, 1e-15));
  CHECK_THAT(c(1, 0).real(), WithinAbs(0.7 + 0.4, 1e-15));

  // grading anticommutes with the two point Dirac operator
  const CMatrix g = pauli::sigma3();
  CHECK(naive_max_abs_diff(commutator(g, f), -2.0 * f * g) <= 1e-15);
  CHECK(anticommutator(g, f).norm() <= 1e-15);
}

TEST_CASE("commutator rejects mismatched sizes", "[matcore]") {
  CHECK_THROWS_AS(commutator(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), Error);
}

TEST_CASE("trace_inner", "[matcore]") {
  CHECK_THAT(trace_inner(CMatrix::Identity(5, 5), CMatrix::Identity(5, 5)).real(), WithinAbs(5, 1e-15));
  CHECK(std::abs(trace_inner(pauli::sigma1(), pauli::sigma2())) <= 1e-15);

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const RVector x = random_bloch(rng), y = random_bloch(rng);
    const cplx v = trace_inner(bloch_density(x), bloch_density(y));
    CHECK_THAT(v.real(), WithinAbs((1 + x.dot(y)) / 2, 1e-14));
    CHECK(std::abs(v.imag()) <= 1e-14);

    const CMatrix a = random_hermitian(3, rng) + cplx(0, 1) * random_hermitian(3, rng);
    const CMatrix b = random_hermitian(3, rng) + cplx(0, 2) * random_hermitian(3, rng);
    CHECK(std::abs(trace_inner(a, b) - std::conj(trace_inner(b, a))) <= 1e-12);
  }
  CHECK_THROWS_AS(trace_inner(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), Error);
}

TEST_CASE("partial traces recover tensor factors", "[matcore]") {
  Rng rng(29);
  const CMatrix r1 = random_density(2, rng), r2 = random_density(3, rng);
  const CMatrix r = kron(r1, r2);
  CHECK(naive_max_abs_diff(partial_trace_right(r, 2, 3), r1) <= 1e-14);
  CHECK(naive_max_abs_diff(partial_trace_left(r, 2, 3), r2) <= 1e-14);
}

TEST_CASE("sparse helpers agree with dense ones", "[matcore]") {
  Rng rng(31);
  const CMatrix a = random_hermitian(3, rng), b = random_hermitian(2, rng);
  CHECK(naive_max_abs_diff(CMatrix(kron(to_sparse(a), to_sparse(b))), kron(a, b)) <= 1e-15);
  CHECK(std::abs(trace_inner(to_sparse(a), to_sparse(a)) - trace_inner(a, a)) <= 1e-12);
  const CMatrix ds = direct_sum(a, b);
  CHECK(ds.rows() == 5);
  CHECK(naive_max_abs_diff(ds.bottomRightCorner(2, 2), b) == 0);
  CHECK(ds.topRightCorner(3, 2).norm() == 0);
}
