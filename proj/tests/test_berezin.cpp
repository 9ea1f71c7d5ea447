#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "specdist/berezin.hpp"
#include "specdist/matcore.hpp"
#include "specdist/sampling.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using Catch::Matchers::WithinAbs;

namespace {

const BerezinMaps& maps() {
  static const BerezinMaps m = berezin_maps(800);
  return m;
}

CVector random_function(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  CVector f(n);
  for (int i = 0; i < n; ++i) f(i) = cplx(normal(rng), normal(rng));
  return f;
}

}  // namespace

TEST_CASE("Fibonacci quadrature", "[berezin]") {
  const SphereQuadrature& q = maps().quad;
  CHECK_THAT(q.weights.sum(), WithinAbs(1, 1e-12));
  for (int i = 0; i < q.nodes.rows(); ++i) CHECK_THAT(q.nodes.row(i).norm(), WithinAbs(1, 1e-12));
  const RVector mean = q.nodes.transpose() * q.weights;
  CHECK(mean.cwiseAbs().maxCoeff() <= 5e-3);
  CHECK_THROWS(fibonacci_sphere(0));
}

TEST_CASE("rotated projections are rank one", "[berezin]") {
  for (std::size_t i = 0; i < maps().projections.size(); i += 37) {
    const CMatrix& p = maps().projections[i];
    CHECK_THAT(p.trace().real(), WithinAbs(1, 1e-10));
    CHECK((p * p - p).norm() <= 1e-10);
    // the projection points at its node
    for (int k = 1; k <= 3; ++k)
      CHECK_THAT(trace_inner(pauli::sigma(k), p).real(), WithinAbs(maps().quad.nodes(i, k - 1), 1e-12));
  }
  RVector south(3);
  south << 0, 0, -1;
  const CMatrix u = su2_rotation_to(south);
  CHECK((u.adjoint() * u - CMatrix::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("symbols", "[berezin]") {
  const CVector one = symbol(maps(), CMatrix::Identity(2, 2));
  CHECK((one.array() - 1.0).abs().maxCoeff() <= 1e-12);
  const CVector s3 = symbol(maps(), pauli::sigma3());
  for (int i = 0; i < s3.size(); ++i) CHECK_THAT(s3(i).real(), WithinAbs(maps().quad.nodes(i, 2), 1e-12));

  RVector north(3);
  north << 0, 0, 1;
  const CMatrix u = su2_rotation_to(north);
  CHECK_THAT(std::abs((u * maps().P * u.adjoint() * maps().P).trace()), WithinAbs(1, 1e-12));

  Rng rng(191);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix rho = random_density(2, rng);
    const CVector s = symbol(maps(), rho);
    CHECK(s.real().minCoeff() >= -1e-10);
    CHECK(s.cwiseAbs().maxCoeff() <= operator_norm(rho) + 1e-12);
    CHECK_THAT(2 * maps().quad.weights.dot(s.real()), WithinAbs(1, 5e-3));
  }
}

TEST_CASE("quantization", "[berezin]") {
  const int n = static_cast<int>(maps().quad.nodes.rows());
  const CMatrix q1 = quantize(maps(), CVector::Ones(n));
  CHECK((q1 - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 5e-3);
  CHECK(quantize(maps(), CVector::Zero(n)).norm() == 0);

  const CMatrix q3 = quantize(maps(), symbol(maps(), pauli::sigma3()));
  const cplx scale = q3(0, 0);
  CHECK((q3 - scale * pauli::sigma3()).cwiseAbs().maxCoeff() <= 5e-3);

  Rng rng(193);
  std::uniform_real_distribution<double> u(0, 1);
  CVector f(n);
  for (int i = 0; i < n; ++i) f(i) = u(rng);
  const CMatrix qf = quantize(maps(), f);
  CHECK(hermitian_defect(qf) <= 1e-12);
  CHECK(hermitian_eigenvalues(qf).minCoeff() >= -1e-10);
}

TEST_CASE("symbol and quantization are adjoint", "[berezin]") {
  const int n = static_cast<int>(maps().quad.nodes.rows());
  CHECK(adjointness_residual(maps(), CMatrix::Identity(2, 2), CVector::Ones(n)) <= 1e-12);
  CHECK(adjointness_residual(maps(), pauli::sigma1(), symbol(maps(), pauli::sigma2())) <= 1e-10);
  Rng rng(197);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_hermitian(2, rng) + cplx(0, 1) * random_hermitian(2, rng);
    CHECK(adjointness_residual(maps(), a, random_function(n, rng)) <= 1e-10);
  }
}

TEST_CASE("cost distance", "[berezin]") {
  Rng rng(199);
  const CMatrix rho = random_density(2, rng);
  CHECK(cost_distance(maps(), rho, rho) <= 1e-12);

  const RMatrix cost = geodesic_cost(maps());
  const double ell = mean_geodesic(maps());
  double lo = 1e300, hi = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const RVector x = random_bloch(rng), y = random_bloch(rng);
    const CMatrix a = bloch_density(x), b = bloch_density(y);
    const double w = cost_distance(maps(), cost, a, b);
    CHECK(w <= std::pow(2.0, 1.5) * ell * hs_norm(a - b) + 1e-12);
    const double ratio = w / (x - y).norm();
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK((hi - lo) / hi <= 0.03);
}
