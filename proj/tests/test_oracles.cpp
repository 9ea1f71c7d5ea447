#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "specdist/engine.hpp"
#include "specdist/error.hpp"
#include "specdist/matcore.hpp"
#include "specdist/oracles.hpp"
#include "specdist/sampling.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using namespace specdist::oracles;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RVector vec3(double a, double b, double c) {
  RVector v(3);
  v << a, b, c;
  return v;
}

CVector pure_vector(const RVector& x) {
  const CMatrix rho = bloch_density(x);
  const HermitianEig e = hermitian_eig(rho);
  return e.eigenvectors.col(1);
}

}  // namespace

TEST_CASE("two point closed form", "[oracles]") {
  CHECK(two_point_distance(0.5, 0.5, -0.5) == 1.0);
  CHECK(two_point_distance(0.5, 0.2, 0.2) == 0.0);
  CHECK(two_point_distance(2.0, 1.0, -0.5) == 1.5);
  CHECK_THROWS_AS(two_point_distance(0.5, 0.7, 0.0), Error);
}

TEST_CASE("simplex closed form", "[oracles]") {
  CHECK(simplex3_distance(RVector::Unit(3, 0), RVector::Unit(3, 1)) == 1.0);
  CHECK(simplex3_distance(RVector::Unit(3, 0), RVector::Unit(3, 0)) == 0.0);
  CHECK_THAT(simplex3_distance(RVector::Unit(3, 0), RVector::Constant(3, 1.0 / 3)), WithinAbs(2.0 / 3, 1e-15));
  CHECK_THROWS_AS(simplex3_distance(vec3(0.5, 0.5, 0.5), RVector::Unit(3, 0)), Error);
}

TEST_CASE("Bloch closed forms", "[oracles]") {
  CHECK(bloch_conjugation_distance(vec3(0, 0, 1), vec3(0, 0, -1)) == 2.0);
  CHECK(bloch_flip_distance(vec3(0.3, 0, 0), vec3(0.3, 0, 0)) == 0.0);
  CHECK_THAT(bloch_conjugation_distance(vec3(0.6, 0, 0), vec3(0, 0.8, 0)), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(bloch_flip_distance(vec3(1, 1, 0), vec3(0, 0, 0)), Error);

  CHECK_THAT(bloch_truncated_moyal_distance(vec3(0.5, 0, 0), vec3(-0.5, 0, 0)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(bloch_truncated_moyal_distance(vec3(0, 0, 0.5), vec3(0, 0, -0.5)), WithinAbs(0.5, 1e-15));
  const double s = 0.4 / std::numbers::sqrt2;
  CHECK_THAT(bloch_truncated_moyal_distance(vec3(s, 0, s), vec3(0, 0, 0)), WithinAbs(0.4 / std::numbers::sqrt2, 1e-15));
  CHECK(bloch_truncated_moyal_distance(vec3(0.1, 0.2, 0.3), vec3(0.1, 0.2, 0.3)) == 0.0);
  // both branches meet at the quarter angles
  CHECK_THAT(moyal_c(std::numbers::pi / 4), WithinAbs(1 / std::numbers::sqrt2, 1e-15));
  CHECK_THAT(moyal_c(std::numbers::pi / 4 - 1e-12), WithinAbs(1 / std::numbers::sqrt2, 1e-11));
}

TEST_CASE("purified distance closed forms", "[oracles]") {
  const CVector v = pure_vector(vec3(0, 0, 1));
  CHECK(purified_distance_pure(v, v) <= 1e-15);
  CHECK_THAT(purified_distance_qubit(vec3(0, 0, 0), vec3(0, 0, 1)), WithinAbs(1 / std::numbers::sqrt2, 1e-15));

  Rng rng(131);
  for (int trial = 0; trial < 50; ++trial) {
    const RVector x = random_bloch(rng, true), y = random_bloch(rng, true);
    const double half = 0.5 * (x - y).norm();
    CHECK_THAT(purified_distance_pure(pure_vector(x), pure_vector(y)), WithinAbs(half, 1e-12));
    CHECK_THAT(purified_distance_qubit(x, y), WithinAbs(half, 1e-12));
  }
}

TEST_CASE("two by two point Lipschitz norm", "[oracles]") {
  CHECK_THAT(two_two_point_lipnorm(1, 0, 0, 0.3, -0.7), WithinAbs(1, 1e-15));
  CHECK_THAT(two_two_point_lipnorm(0, 0, 1, 0, 0), WithinAbs(std::numbers::sqrt2, 1e-15));
  CHECK(two_two_point_lipnorm(0, 0, 0, 0.2, 0.1) == 0.0);

  const CMatrix f = pauli::sigma1(), g = pauli::sigma3(), id = CMatrix::Identity(2, 2);
  const CMatrix d = kron(f, id) + kron(g, f);
  Rng rng(137);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const double x1 = 3 * u(rng), x2 = 3 * u(rng), x3 = 3 * u(rng), phi1 = u(rng), psi2 = u(rng);
    const CMatrix a = x1 / 2 * kron(g, id) + x2 / 2 * kron(id, g) + x3 / 2 * kron(phi1 * id + g, psi2 * id + g);
    const double direct = operator_norm(commutator(d, a));
    CHECK_THAT(two_two_point_lipnorm(x1, x2, x3, phi1, psi2), WithinAbs(direct, 1e-10 * std::max(1.0, direct)));
  }
}

TEST_CASE("Lipschitz norm grows with the mixed coefficient", "[oracles]") {
  Rng rng(139);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const double x1 = u(rng), x2 = u(rng), phi1 = u(rng), psi2 = u(rng);
    const double x3 = std::abs(u(rng));
    const double step = 0.1 * std::abs(u(rng));
    // lower bound after the triangle inequality in the mixed term
    auto f = [&](double t) { return std::numbers::sqrt2 * t + std::hypot(x1, x2) - t * std::hypot(psi2, phi1); };
    CHECK(f(x3 + step) >= f(x3) - 1e-15);
  }
}

TEST_CASE("oracles agree with the engine", "[oracles]") {
  Rng rng(149);
  const Options opts;
  const Triple simplex = simplex_triple();
  const Triple conj = bloch_conjugation_triple(), flip = bloch_flip_triple(), moyal = bloch_moyal_triple();
  for (int trial = 0; trial < 10; ++trial) {
    const RVector p = random_probability(3, rng), q = random_probability(3, rng);
    CHECK_THAT(spectral_distance(simplex, state_from_simplex(p), state_from_simplex(q), opts).value,
               WithinRel(simplex3_distance(p, q), 1e-5));
    const RVector x = random_bloch(rng), y = random_bloch(rng);
    const State sx = state_from_bloch(x), sy = state_from_bloch(y);
    CHECK_THAT(spectral_distance(conj, sx, sy, opts).value, WithinRel(bloch_conjugation_distance(x, y), 1e-5));
    CHECK_THAT(spectral_distance(flip, sx, sy, opts).value, WithinRel(bloch_flip_distance(x, y), 1e-5));
    CHECK_THAT(spectral_distance(moyal, sx, sy, opts).value, WithinRel(bloch_truncated_moyal_distance(x, y), 1e-5));
  }
}
