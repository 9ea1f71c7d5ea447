#include "specdist/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specdist/error.hpp"

namespace specdist::oracles {

namespace {

void require_bloch(const RVector& x) {
  if (x.size() != 3) throw Error(ErrorCode::InvalidArgument, "bloch point must have 3 components");
  if (x.norm() > 1.0 + 1e-12) throw Error(ErrorCode::OutOfBall, "bloch point lies outside the unit ball");
}

void require_simplex3(const RVector& p) {
  if (p.size() != 3) throw Error(ErrorCode::InvalidArgument, "simplex point must have 3 components");
  if (p.minCoeff() < -1e-12 || std::abs(p.sum() - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotProbability, "simplex point is not a probability vector");
  }
}

}  // namespace

double two_point_distance(double lambda, double phi, double psi) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "two_point_distance: lambda must be positive");
  if (std::abs(phi) > lambda * (1 + 1e-12) || std::abs(psi) > lambda * (1 + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "two_point_distance: states must lie in [-lambda, lambda]");
  }
  return std::abs(phi - psi);
}

double simplex3_distance(const RVector& p, const RVector& q) {
  require_simplex3(p);
  require_simplex3(q);
  return (p - q).cwiseAbs().maxCoeff();
}

double bloch_conjugation_distance(const RVector& x, const RVector& y) {
  require_bloch(x);
  require_bloch(y);
  return (x - y).norm();
}

double bloch_flip_distance(const RVector& x, const RVector& y) { return bloch_conjugation_distance(x, y); }

double moyal_c(double theta) {
  constexpr double pi = std::numbers::pi;
  if (theta >= pi / 4 && theta <= 3 * pi / 4) return std::sin(theta);
  return 1.0 / std::abs(2.0 * std::cos(theta));
}

double bloch_truncated_moyal_distance(const RVector& x, const RVector& y) {
  require_bloch(x);
  require_bloch(y);
  const RVector d = x - y;
  const double len = d.norm();
  if (len == 0.0) return 0.0;
  const double theta = std::atan2(std::hypot(d(0), d(1)), d(2));
  return moyal_c(theta) * len;
}

double purified_distance_pure(const CVector& v, const CVector& w) {
  if (v.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "purified_distance_pure: size mismatch");
  const double overlap = std::norm(v.dot(w));
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

double purified_distance_qubit(const RVector& x, const RVector& y) {
  require_bloch(x);
  require_bloch(y);
  const double rx = std::sqrt(std::max(0.0, 1.0 - x.squaredNorm()));
  const double ry = std::sqrt(std::max(0.0, 1.0 - y.squaredNorm()));
  return std::sqrt(std::max(0.0, 1.0 - x.dot(y) - rx * ry)) / std::numbers::sqrt2;
}

double two_two_point_lipnorm(double x1, double x2, double x3, double phi1, double psi2) {
  if (std::abs(phi1) > 1.0 + 1e-12 || std::abs(psi2) > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "two_two_point_lipnorm: phi1, psi2 must lie in [-1, 1]");
  }
  return std::numbers::sqrt2 * std::abs(x3) + std::hypot(x1 + x3 * psi2, x2 + x3 * phi1);
}

}  // namespace specdist::oracles
