#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "specdist/engine.hpp"
#include "specdist/error.hpp"
#include "specdist/matcore.hpp"
#include "specdist/pythagoras.hpp"
#include "specdist/sampling.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

State two_point_state(double p) {
  RVector v(2);
  v << p, 1 - p;
  return state_from_simplex(v);
}

MetricSpace metric(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  RMatrix g(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) g(i, j++) = v;
    ++i;
  }
  return make_metric(g);
}

}  // namespace

TEST_CASE("product metric", "[pythagoras]") {
  CHECK(product_metric(3, 4) == 5);
  CHECK(product_metric(0.7, 0) == 0.7);
  CHECK_THAT(product_metric(1, 1), WithinAbs(std::numbers::sqrt2, 1e-15));
  CHECK(product_metric(kInf, 1) == kInf);
}

TEST_CASE("two point squared is orthogonal for product states", "[pythagoras]") {
  const ProductLab lab(product_triple(two_point_triple(0.5), two_point_triple(0.5)));
  Rng rng(151);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const double a1 = u(rng), a2 = u(rng), b1 = u(rng), b2 = u(rng);
    const State phi = product_state(lab.product(), two_point_state(a1), two_point_state(a2));
    const State psi = product_state(lab.product(), two_point_state(b1), two_point_state(b2));
    const PythagorasReport r = lab.check(phi, psi);
    CHECK(r.verdict == Verdict::Equality);
    CHECK_THAT(r.d_spectral, WithinAbs(std::hypot(a1 - b1, a2 - b2), 1e-5));
  }
}

TEST_CASE("finite metric products are orthogonal on pure states", "[pythagoras]") {
  const MetricSpace x = metric({{0, 1, 2}, {1, 0, 2.5}, {2, 2.5, 0}});
  const MetricSpace y = metric({{0, 0.7}, {0.7, 0}});
  const ProductLab lab(product_triple(finite_metric_triple(x), finite_metric_triple(y)));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k) {
      const State phi = product_state(lab.product(), state_from_simplex(RVector::Unit(3, 0)),
                                      state_from_simplex(RVector::Unit(2, 0)));
      const State psi = product_state(lab.product(), state_from_simplex(RVector::Unit(3, i)),
                                      state_from_simplex(RVector::Unit(2, k)));
      const PythagorasReport r = lab.check(phi, psi);
      CHECK(r.verdict == Verdict::Equality);
      CHECK_THAT(r.d_spectral, WithinAbs(std::hypot(x.g(0, i), y.g(0, k)), 1e-5));
    }
}

TEST_CASE("random product states stay inside the two sided bound", "[pythagoras]") {
  Rng rng(157);
  for (int trial = 0; trial < 8; ++trial) {
    const ProductLab lab(product_triple(random_even_triple(rng), random_triple(rng)));
    const auto& p = lab.product();
    const State phi = product_state(p, random_state(p.left, rng), random_state(p.right, rng));
    const State psi = product_state(p, random_state(p.left, rng), random_state(p.right, rng));
    const PythagorasReport r = lab.check(phi, psi);
    if (!std::isfinite(r.d_spectral) || r.d_product < 1e-9) continue;
    CHECK(r.ratio >= 1 - 1e-5);
    CHECK(r.ratio <= std::numbers::sqrt2 + 1e-5);
    CHECK(r.verdict != Verdict::Violation);
  }
}

TEST_CASE("moving one factor keeps the factor distance", "[pythagoras]") {
  Rng rng(163);
  const ProductLab lab(product_triple(two_point_triple(0.8), simplex_triple()));
  const auto& p = lab.product();
  for (int trial = 0; trial < 4; ++trial) {
    const State a1 = random_state(p.left, rng), b1 = random_state(p.left, rng), c2 = random_state(p.right, rng);
    const double d = lab.combined().primal(product_state(p, a1, c2), product_state(p, b1, c2)).value;
    CHECK_THAT(d, WithinRel(lab.left().primal(a1, b1).value, 1e-5));
  }
}

TEST_CASE("d_times ignores correlations", "[pythagoras]") {
  const ProductLab lab(product_triple(two_point_triple(0.5), two_point_triple(0.5)));
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const State b = State::density(bell * bell.adjoint());
  const State flat = State::density(CMatrix::Identity(4, 4) / 4.0);
  CHECK(lab.d_times(b, flat).value <= 1e-9);
  CHECK(lab.d_times(b, b).value <= 1e-12);
  CHECK(lab.combined().primal(b, flat).value > 1e-3);

  const State up = two_point_state(1), down = two_point_state(0);
  const DTimes dt = lab.d_times(product_state(lab.product(), up, up), product_state(lab.product(), down, down));
  CHECK_THAT(dt.value, WithinAbs(std::numbers::sqrt2, 1e-5));
  const double direct =
      lab.d_times(product_state(lab.product(), up, up), product_state(lab.product(), down, down), {}, true).value;
  CHECK_THAT(direct, WithinAbs(dt.value, 1e-5));
}

TEST_CASE("P is an idempotent fixing the sum of factor algebras", "[pythagoras]") {
  const Triple t1 = two_point_triple(0.5), t2 = two_point_triple(0.5);
  const State phi1 = two_point_state(0.3), psi2 = two_point_state(0.8);
  const IdempotentP idem = build_P(t1, phi1, t2, psi2);
  CHECK(idem.idempotency_defect <= 1e-10);
  CHECK(idem.rank == 3);

  const int m1 = t1.algebra_dim(), m2 = t2.algebra_dim();
  Rng rng(167);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    // a1 x 1 + 1 x a2
    RVector a1(m1), a2(m2);
    for (int k = 0; k < m1; ++k) a1(k) = normal(rng);
    for (int k = 0; k < m2; ++k) a2(k) = normal(rng);
    RVector c = RVector::Zero(m1 * m2);
    for (int j = 0; j < m1; ++j)
      for (int k = 0; k < m2; ++k) c(j * m2 + k) = a1(j) * idem.unit2(k) + idem.unit1(j) * a2(k);
    CHECK((idem.matrix * c - c).norm() <= 1e-12 * std::max(1.0, c.norm()));

    // (1 - P) a vanishes on phi1 x anything and anything x psi2
    RVector a(m1 * m2);
    for (int k = 0; k < m1 * m2; ++k) a(k) = normal(rng);
    const RVector rest = a - idem.matrix * a;
    const RVector s1 = pairing(t1, random_state(t1, rng)), s2 = pairing(t2, random_state(t2, rng));
    double left = 0, right = 0;
    for (int j = 0; j < m1; ++j)
      for (int k = 0; k < m2; ++k) {
        left += rest(j * m2 + k) * idem.phi1(j) * s2(k);
        right += rest(j * m2 + k) * s1(j) * idem.psi2(k);
      }
    CHECK(std::abs(left) <= 1e-12);
    CHECK(std::abs(right) <= 1e-12);
  }
}

TEST_CASE("P contracts the Lipschitz seminorm on two point squared", "[pythagoras]") {
  const ProductLab lab(product_triple(two_point_triple(0.5), two_point_triple(0.5)));
  Rng rng(173);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const IdempotentP idem =
        build_P(lab.product().left, two_point_state(u(rng)), lab.product().right, two_point_state(u(rng)));
    const ContractionReport rep = check_contraction(lab.combined(), idem, 200, 1000 + trial);
    CHECK(rep.violations == 0);
    CHECK(rep.max_ratio <= 1 + 1e-10);
  }
}

TEST_CASE("idempotent norm at pure two point marginals is three", "[pythagoras]") {
  CMatrix up = CMatrix::Zero(2, 2);
  up(0, 0) = 1;
  const KEstimate k = idempotent_norm_K(up, up, pauli::sigma3(), pauli::sigma3(), 200, 7);
  CHECK_THAT(k.witness, WithinAbs(3, 1e-12));
  CHECK_THAT(k.k, WithinAbs(3, 1e-9));

  Rng rng(179);
  for (int trial = 0; trial < 10; ++trial) {
    const KEstimate e = idempotent_norm_K(random_density(2, rng), random_density(2, rng), pauli::sigma3(),
                                          pauli::sigma3(), 50, trial);
    CHECK(e.k >= 1 - 1e-12);
    CHECK(e.k <= 3 + 1e-9);
  }
}

TEST_CASE("block reduction", "[pythagoras]") {
  const MetricSpace two = metric({{0, 1.3}, {1.3, 0}});
  const Triple t2 = two_point_triple(0.5);
  const BlockReduction single = block_reduction_bound(two, t2, 0, 1, two_point_state(1), two_point_state(0));
  CHECK_THAT(single.d_full, WithinRel(single.d_block, 1e-5));
  CHECK_THAT(single.d_block, WithinRel(std::hypot(1.3, 1.0), 1e-5));

  const MetricSpace three = metric({{0, 1, 1.5}, {1, 0, 2}, {1.5, 2, 0}});
  Rng rng(181);
  for (int trial = 0; trial < 3; ++trial) {
    const BlockReduction r =
        block_reduction_bound(three, t2, trial % 3, (trial + 1) % 3, random_state(t2, rng), random_state(t2, rng));
    CHECK(r.holds);
    CHECK(r.d_full <= r.d_block * (1 + 1e-5));
  }
}

TEST_CASE("verdict names", "[pythagoras]") {
  CHECK(std::string(to_string(Verdict::Equality)) == "equality");
  CHECK(std::string(to_string(Verdict::Strict)) == "strict");
  CHECK(std::string(to_string(Verdict::Violation)) == "violation");
}
