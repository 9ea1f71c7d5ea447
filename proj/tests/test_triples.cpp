#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "specdist/engine.hpp"
#include "specdist/error.hpp"
#include "specdist/matcore.hpp"
#include "specdist/sampling.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using Catch::Matchers::WithinAbs;

namespace {

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

double min_eigenvalue(const CMatrix& m) { return hermitian_eigenvalues(m).minCoeff(); }

RVector vec3(double a, double b, double c) {
  RVector v(3);
  v << a, b, c;
  return v;
}

RVector vec4(double a, double b, double c, double d) {
  RVector v(4);
  v << a, b, c, d;
  return v;
}

MetricSpace metric3(double g12, double g13, double g23) {
  RMatrix g = RMatrix::Zero(3, 3);
  g(0, 1) = g(1, 0) = g12;
  g(0, 2) = g(2, 0) = g13;
  g(1, 2) = g(2, 1) = g23;
  return make_metric(g);
}

}  // namespace

TEST_CASE("two point triple normalization", "[triples]") {
  const Triple half = two_point_triple(0.5);
  CHECK(max_diff(CMatrix(half.dirac), pauli::sigma1()) == 0);
  CHECK(max_diff(CMatrix(*half.grading), pauli::sigma3()) == 0);
  CHECK(max_diff(CMatrix(two_point_triple(1.0).dirac), pauli::sigma1() / 2.0) == 0);
  CHECK_THROWS_AS(two_point_triple(0.0), Error);

  for (double lambda : {0.3, 1.0, 2.5}) {
    const double d = spectral_distance(two_point_triple(lambda), state_from_simplex(RVector::Unit(2, 0)),
                                       state_from_simplex(RVector::Unit(2, 1)))
                         .value;
    CHECK_THAT(d, WithinAbs(2 * lambda, 1e-5 * lambda));
  }
}

TEST_CASE("finite metric triple layout", "[triples]") {
  RMatrix g(2, 2);
  g << 0, 1, 1, 0;
  const Triple t = finite_metric_triple(make_metric(g));
  CHECK(t.dim == 4);
  CHECK(t.even());
  const CMatrix d(t.dirac);
  CHECK(d(0, 1) == cplx(1.0));
  CHECK(d(2, 3) == cplx(1.0));
  CHECK(d(0, 0) == cplx(0.0));
}

TEST_CASE("finite metric commutator norm is the largest slope", "[triples]") {
  const MetricSpace x = metric3(1.0, 2.0, 2.5);
  const Triple t = finite_metric_triple(x);
  const DistanceSolver solver(t);
  Rng rng(41);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const RVector a = vec3(u(rng), u(rng), u(rng));
    double slope = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) slope = std::max(slope, std::abs(a(i) - a(j)) / x.g(i, j));
    CHECK_THAT(solver.lip_norm(a), WithinAbs(slope, 1e-10));
  }
}

TEST_CASE("finite metric pure state distances reproduce the metric", "[triples]") {
  const MetricSpace x = metric3(1.0, 2.0, 2.5);
  const Triple t = finite_metric_triple(x);
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l) {
      const double d =
          spectral_distance(t, state_from_simplex(RVector::Unit(3, k)), state_from_simplex(RVector::Unit(3, l))).value;
      CHECK_THAT(d, WithinAbs(x.g(k, l), 1e-5 * x.g(k, l)));
    }
}

TEST_CASE("unit metric on three points gives the Chebyshev distance", "[triples]") {
  const Triple t = finite_metric_triple(metric3(1, 1, 1));
  const RVector p = vec3(0.6, 0.3, 0.1), q = vec3(0.2, 0.2, 0.6);
  const double d = spectral_distance(t, state_from_simplex(p), state_from_simplex(q)).value;
  CHECK_THAT(d, WithinAbs((p - q).cwiseAbs().maxCoeff(), 1e-5));
}

TEST_CASE("metric validation", "[triples]") {
  RMatrix g(2, 2);
  g << 0, 1, 2, 0;
  CHECK_THROWS_AS(make_metric(g), Error);
  g << 1, 1, 1, 0;
  CHECK_THROWS_AS(make_metric(g), Error);
  g << 0, -1, -1, 0;
  CHECK_THROWS_AS(make_metric(g), Error);
}

TEST_CASE("Bloch triples commutator norms", "[triples]") {
  const DistanceSolver conj(bloch_conjugation_triple());
  const DistanceSolver flip(bloch_flip_triple());
  const DistanceSolver moyal(bloch_moyal_triple());
  CHECK(conj.triple().real_linear);
  Rng rng(43);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const RVector c = vec4(u(rng), u(rng), u(rng), u(rng));
    const double v = c.tail(3).norm();
    CHECK_THAT(conj.lip_norm(c), WithinAbs(v, 1e-10));
    CHECK_THAT(flip.lip_norm(c), WithinAbs(std::abs(c(0)) + v, 1e-10));
    CHECK_THAT(moyal.lip_norm(c), WithinAbs(v + std::abs(c(3)), 1e-10));
  }
}

TEST_CASE("product of two point triples", "[triples]") {
  const ProductTriple p = product_triple(two_point_triple(0.5), two_point_triple(0.5));
  const CMatrix f = pauli::sigma1(), g = pauli::sigma3(), id = CMatrix::Identity(2, 2);
  CHECK(max_diff(CMatrix(p.combined.dirac), kron(f, id) + kron(g, f)) == 0);
  CHECK(p.combined.algebra_dim() == 4);
  CHECK(p.combined.even());
  CHECK_THROWS_AS(product_triple(diagonal_triple(pauli::sigma1()), two_point_triple(0.5)), Error);
}

TEST_CASE("product with a trivial factor keeps the Dirac operator", "[triples]") {
  const Triple t = two_point_triple(0.7);
  const Triple trivial = diagonal_triple(CMatrix::Zero(1, 1), "trivial");
  const ProductTriple p = product_triple(t, trivial);
  CHECK(max_diff(CMatrix(p.combined.dirac), CMatrix(t.dirac)) == 0);
}

TEST_CASE("product is associative on three two point factors", "[triples]") {
  const Triple a = two_point_triple(0.5), b = two_point_triple(0.8), c = two_point_triple(1.3);
  const Triple left = product_triple(product_triple(a, b).combined, c).combined;
  const Triple right = product_triple(a, product_triple(b, c).combined).combined;
  Rng rng(47);
  for (int trial = 0; trial < 3; ++trial) {
    const CMatrix r1 = random_density(8, rng), r2 = random_density(8, rng);
    const double dl = spectral_distance(left, State::density(r1), State::density(r2)).value;
    const double dr = spectral_distance(right, State::density(r1), State::density(r2)).value;
    CHECK_THAT(dl, WithinAbs(dr, 1e-5 * std::max(1.0, dl)));
  }
}

TEST_CASE("evenize doubles the space and keeps distances", "[triples]") {
  const Triple t = diagonal_triple(pauli::sigma1());
  const Triple e = evenize(t);
  CHECK(e.dim == 4);
  CHECK(CMatrix(*e.grading * e.dirac + e.dirac * *e.grading).norm() == 0);
  CHECK_THROWS_AS(evenize(e), Error);

  Rng rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const RVector p = random_probability(2, rng), q = random_probability(2, rng);
    const double d0 = spectral_distance(t, state_from_simplex(p), state_from_simplex(q)).value;
    const double d1 = spectral_distance(e, state_from_simplex(p), state_from_simplex(q)).value;
    CHECK_THAT(d1, WithinAbs(d0, 1e-5 * std::max(1.0, d0)));
  }
}

TEST_CASE("marginals of product and Bell states", "[triples]") {
  Rng rng(59);
  const CMatrix r1 = random_density(2, rng), r2 = random_density(3, rng);
  const auto [m1, m2] = marginals(kron(r1, r2), 2, 3);
  CHECK(max_diff(m1, r1) <= 1e-14);
  CHECK(max_diff(m2, r2) <= 1e-14);

  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const auto [b1, b2] = marginals(CMatrix(bell * bell.adjoint()), 2, 2);
  CHECK(max_diff(b1, CMatrix::Identity(2, 2) / 2.0) <= 1e-15);
  CHECK(max_diff(b2, CMatrix::Identity(2, 2) / 2.0) <= 1e-15);

  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix rho = random_density(4, rng);
    const auto [a, b] = marginals(rho, 2, 2);
    // independent partial trace by explicit index sums
    CMatrix ref = CMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) ref(i, j) += rho(2 * i + k, 2 * j + k);
    CHECK(max_diff(a, ref) <= 1e-14);
    CHECK_THAT(a.trace().real(), WithinAbs(1, 1e-12));
    CHECK(min_eigenvalue(a) >= -1e-12);
    CHECK(min_eigenvalue(b) >= -1e-12);
  }
}

TEST_CASE("partial transpose witnesses entanglement", "[triples]") {
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const CMatrix pt = peres_partial_transpose(CMatrix(bell * bell.adjoint()), 2, 2);
  CHECK_THAT(min_eigenvalue(pt), WithinAbs(-0.5, 1e-14));

  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    CMatrix mix = CMatrix::Zero(4, 4);
    const RVector w = random_probability(3, rng);
    for (int k = 0; k < 3; ++k) mix += w(k) * kron(random_density(2, rng), random_density(2, rng));
    CHECK(min_eigenvalue(peres_partial_transpose(mix, 2, 2)) >= -1e-10);
  }
}

TEST_CASE("state constructors", "[triples]") {
  CHECK(max_diff(bloch_density(vec3(0, 0, 0)), CMatrix::Identity(2, 2) / 2.0) == 0);
  CMatrix up = CMatrix::Zero(2, 2);
  up(0, 0) = 1;
  CHECK(max_diff(bloch_density(vec3(0, 0, 1)), up) <= 1e-15);
  CHECK_THROWS_AS(state_from_bloch(vec3(1, 1, 0)), Error);
  CHECK_THROWS_AS(state_from_simplex(vec3(0.5, 0.6, -0.1)), Error);
  CHECK_THROWS_AS(state_from_simplex(vec3(0.5, 0.6, 0.1)), Error);

  const State bary = state_from_simplex(vec3(1.0 / 3, 1.0 / 3, 1.0 / 3));
  CHECK(max_diff(bary.rho, CMatrix::Identity(3, 3) / 3.0) <= 1e-15);
}
