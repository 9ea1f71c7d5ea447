#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "specdist/engine.hpp"
#include "specdist/error.hpp"
#include "specdist/matcore.hpp"
#include "specdist/triple_io.hpp"
#include "specdist/triples.hpp"

using namespace specdist;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::string data(const std::string& name) { return std::string(SPECDIST_DATA_DIR) + "/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("explicit triple documents", "[io]") {
  const Triple t = load_triple(data("two_point.json"));
  CHECK(t.label == "two_point");
  CHECK(t.dim == 2);
  CHECK(t.even());
  CHECK((CMatrix(t.dirac) - pauli::sigma1()).norm() == 0);

  const Triple m2 = load_triple(data("m2_amplified.json"));
  CHECK(m2.dim == 4);
  CHECK(m2.algebra_dim() == 4);
  CHECK(CMatrix(m2.dirac)(0, 1) == cplx(0.5, 0.2));
}

TEST_CASE("builtin triple documents", "[io]") {
  CHECK(load_triple(data("simplex3.json")).dim == 6);
  CHECK(load_triple(data("bloch_flip.json")).label == "bloch_flip");
  CHECK(parse_triple(R"({"builtin": "two_point", "lambda": 2})").dirac.coeff(0, 1) == cplx(0.25));
  const Triple split = load_triple(data("metric_split.json"));
  CHECK(split.dim == 2 * 4 * 3);
  CHECK(parse_triple(R"({"builtin": "two_point", "evenize": false})").even());
}

TEST_CASE("triple json round trip", "[io]") {
  for (const Triple& t : {two_point_triple(0.7), simplex_triple(), bloch_moyal_triple()}) {
    const Triple back = parse_triple(triple_to_json(t));
    CHECK(back.dim == t.dim);
    CHECK(back.algebra_dim() == t.algebra_dim());
    CHECK(CMatrix(back.dirac - t.dirac).norm() <= 1e-15);
    CHECK(back.even() == t.even());
  }
}

TEST_CASE("states", "[io]") {
  const State north = load_state(data("bloch_north.json"));
  CHECK(north.label == "north");
  CHECK_THAT(north.rho(0, 0).real(), WithinAbs(1, 1e-15));
  const State e1 = load_state(data("e1.json"));
  CHECK(e1.rho.rows() == 3);
  const State coeffs = parse_state(R"({"kind": "coeffs", "values": [1, 0.2, 0, 0.4]})");
  CHECK(coeffs.kind == State::Kind::Values);
  const State pure = parse_state(R"({"kind": "pure", "v": [0.6, {"re": 0, "im": 0.8}]})");
  CHECK_THAT(pure.rho.trace().real(), WithinAbs(1, 1e-15));
  CHECK(code_of([] { parse_state(R"({"kind": "pure", "v": [1, 1]})"); }) == ErrorCode::Validation);
  const State back = parse_state(state_to_json(north));
  CHECK((back.rho - north.rho).norm() <= 1e-15);
}

TEST_CASE("metrics with infinite entries", "[io]") {
  const MetricSpace x = load_metric(data("metric_split.json"));
  CHECK(x.size == 4);
  CHECK(std::isinf(x.g(0, 2)));
  const MetricSpace back = parse_metric(metric_to_json(x));
  CHECK(std::isinf(back.g(1, 3)));
  CHECK(back.g(2, 3) == 2);
}

TEST_CASE("loaded files reproduce known distances", "[io]") {
  const double two_point = spectral_distance(load_triple(data("two_point.json")), load_state(data("up.json")),
                                             load_state(data("down.json")))
                               .value;
  CHECK_THAT(two_point, WithinRel(1.0, 1e-6));
  const double simplex = spectral_distance(load_triple(data("simplex3.json")), load_state(data("e1.json")),
                                           load_state(data("barycenter.json")))
                             .value;
  CHECK_THAT(simplex, WithinRel(2.0 / 3, 1e-6));
  CHECK(spectral_distance(load_triple(data("metric_split.json")), load_state(data("x1.json")),
                          load_state(data("x3.json")))
            .infinite());
}

TEST_CASE("malformed documents name the problem", "[io]") {
  CHECK(code_of([] { parse_triple("{not json"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_triple(R"({"dim": 2})"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_triple(R"({"builtin": "nope"})"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_state(R"({"kind": "bloch", "x": [1, 1, 0]})"); }) == ErrorCode::OutOfBall);
  CHECK(code_of([] { parse_state(R"({"kind": "simplex", "p": [0.7, 0.7]})"); }) == ErrorCode::NotProbability);
  CHECK(code_of([] { parse_metric(R"({"size": 2, "g": [[0, 1], [2, 0]]})"); }) == ErrorCode::Validation);
  CHECK(code_of([] { load_triple(data("missing.json")); }) == ErrorCode::Parse);
}
