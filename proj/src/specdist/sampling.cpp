#include "specdist/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "specdist/error.hpp"

namespace specdist {

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Triple graded_diagonal(Rng& rng) {
  const int n = uniform_int(rng, 3, 4);
  const int plus = n == 4 ? 2 : uniform_int(rng, 1, 2);
  CMatrix gamma = CMatrix::Identity(n, n);
  for (int k = plus; k < n; ++k) gamma(k, k) = -1.0;
  const CMatrix x = ginibre(plus, n - plus, rng);
  CMatrix d = CMatrix::Zero(n, n);
  d.topRightCorner(plus, n - plus) = x;
  d.bottomLeftCorner(n - plus, plus) = x.adjoint();
  return make_triple("random_graded_diagonal", to_sparse(d), to_sparse(gamma), to_sparse(diagonal_basis(n)));
}

Triple graded_matrix(Rng& rng) {
  const CMatrix x = random_hermitian(2, rng), y = random_hermitian(2, rng);
  const CMatrix d = kron(x, pauli::sigma1()) + kron(y, pauli::sigma2());
  const CMatrix gamma = kron(pauli::identity(), pauli::sigma3());
  return make_triple("random_graded_m2", to_sparse(d), to_sparse(gamma), amplify(pauli_basis(), 2), pauli_basis());
}

Triple ungraded_matrix(Rng& rng) {
  return make_triple("random_m2", to_sparse(random_hermitian(4, rng)), std::nullopt, amplify(pauli_basis(), 2),
                     pauli_basis());
}

}  // namespace

MetricSpace random_metric(int n, Rng& rng, double lo, double hi) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "random_metric: need at least one point");
  std::uniform_real_distribution<double> weight(lo, hi);
  RMatrix g = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g(i, j) = g(j, i) = weight(rng);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = std::min(g(i, j), g(i, k) + g(k, j));
  return make_metric(g);
}

RVector random_probability(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  RVector p(n);
  for (int i = 0; i < n; ++i) p(i) = expo(rng);
  return p / p.sum();
}

RVector random_bloch(Rng& rng, bool pure) {
  std::normal_distribution<double> normal;
  RVector x(3);
  do {
    for (int i = 0; i < 3; ++i) x(i) = normal(rng);
  } while (x.norm() < 1e-8);
  x.normalize();
  if (!pure) x *= std::cbrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  return x;
}

CVector random_unit_vector(int n, Rng& rng) {
  CVector v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_hermitian(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

CMatrix random_density(int n, Rng& rng, int rank) {
  if (rank <= 0 || rank > n) rank = n;
  const CMatrix g = ginibre(n, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) * 0.5;
}

Triple random_even_triple(Rng& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: return two_point_triple(std::uniform_real_distribution<double>(0.3, 2.0)(rng));
    case 1: return graded_diagonal(rng);
    case 2: return graded_matrix(rng);
    default: return finite_metric_triple(random_metric(2, rng));
  }
}

Triple random_triple(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return random_even_triple(rng);
    case 1: return diagonal_triple(random_hermitian(uniform_int(rng, 2, 4), rng), "random_diagonal");
    default: return ungraded_matrix(rng);
  }
}

State random_state(const Triple& t, Rng& rng) {
  const int n = t.state_dim();
  return State::density(random_density(n, rng, uniform_int(rng, 1, n)), "random");
}

}  // namespace specdist
