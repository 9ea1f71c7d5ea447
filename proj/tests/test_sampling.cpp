#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specdist/matcore.hpp"
#include "specdist/sampling.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using Catch::Matchers::WithinAbs;

TEST_CASE("random metrics satisfy the metric axioms", "[sampling]") {
  Rng rng(223);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const MetricSpace x = random_metric(n, rng);
    CHECK_NOTHROW(validate_metric(x));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) CHECK(x.g(i, k) <= x.g(i, j) + x.g(j, k) + 1e-12);
  }
}

TEST_CASE("random states are valid", "[sampling]") {
  Rng rng(227);
  for (int trial = 0; trial < 20; ++trial) {
    const RVector p = random_probability(5, rng);
    CHECK_THAT(p.sum(), WithinAbs(1, 1e-12));
    CHECK(p.minCoeff() >= 0);
    CHECK(random_bloch(rng).norm() <= 1 + 1e-12);
    CHECK_THAT(random_bloch(rng, true).norm(), WithinAbs(1, 1e-12));
    CHECK_THAT(random_unit_vector(4, rng).norm(), WithinAbs(1, 1e-12));
    CHECK(hermitian_defect(random_hermitian(4, rng)) <= 1e-15);
    const CMatrix rho = random_density(3, rng, 1);
    CHECK_NOTHROW(validate_density(rho));
    CHECK_THAT((rho * rho).trace().real(), WithinAbs(1, 1e-12));
  }
}

TEST_CASE("random triples are valid and even when asked", "[sampling]") {
  Rng rng(229);
  for (int trial = 0; trial < 30; ++trial) {
    const Triple e = random_even_triple(rng);
    CHECK(e.even());
    CHECK_NOTHROW(validate_triple(e));
    const Triple t = random_triple(rng);
    CHECK_NOTHROW(validate_triple(t));
    const State s = random_state(t, rng);
    CHECK(pairing(t, s).size() == t.algebra_dim());
  }
}

TEST_CASE("sampling is reproducible for a fixed seed", "[sampling]") {
  Rng a(5), b(5);
  CHECK((random_density(3, a) - random_density(3, b)).norm() == 0);
  CHECK((random_metric(4, a).g - random_metric(4, b).g).norm() == 0);
}
