#include "specdist/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specdist/error.hpp"
#include "specdist/transport.hpp"
#include "specdist/triples.hpp"

namespace specdist {

SphereQuadrature fibonacci_sphere(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "fibonacci_sphere: need at least one node");
  SphereQuadrature q;
  q.nodes.resize(n, 3);
  q.weights = RVector::Constant(n, 1.0 / n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    q.nodes.row(i) << r * std::cos(phi), r * std::sin(phi), z;
  }
  return q;
}

CMatrix su2_rotation_to(const RVector& n) {
  const double nz = std::clamp(n(2), -1.0, 1.0);
  const double theta = std::acos(nz);
  RVector axis(3);
  axis << -n(1), n(0), 0.0;  // z × n
  const double len = axis.norm();
  if (len < 1e-15) axis << 1.0, 0.0, 0.0;
  else axis /= len;
  CMatrix k = CMatrix::Zero(2, 2);
  for (int i = 0; i < 3; ++i) k += axis(i) * pauli::sigma(i + 1);
  return std::cos(theta / 2) * pauli::identity() - cplx(0, 1) * std::sin(theta / 2) * k;
}

BerezinMaps berezin_maps(int n) {
  BerezinMaps maps;
  maps.P = CMatrix::Zero(2, 2);
  maps.P(0, 0) = 1.0;
  maps.quad = fibonacci_sphere(n);
  for (int i = 0; i < n; ++i) {
    const CMatrix u = su2_rotation_to(maps.quad.nodes.row(i).transpose());
    maps.rotations.push_back(u);
    maps.projections.push_back(u * maps.P * u.adjoint());
  }
  return maps;
}

CVector symbol(const BerezinMaps& maps, const CMatrix& a) {
  if (a.rows() != maps.N || a.cols() != maps.N) throw Error(ErrorCode::DimensionMismatch, "symbol: a must be 2x2");
  CVector out(maps.projections.size());
  for (size_t i = 0; i < maps.projections.size(); ++i) out(i) = (maps.projections[i] * a).trace();
  return out;
}

CMatrix quantize(const BerezinMaps& maps, const CVector& f) {
  if (f.size() != static_cast<int>(maps.projections.size())) {
    throw Error(ErrorCode::DimensionMismatch, "quantize: f must be sampled on the quadrature nodes");
  }
  CMatrix q = CMatrix::Zero(maps.N, maps.N);
  for (size_t i = 0; i < maps.projections.size(); ++i) q += maps.quad.weights(i) * f(i) * maps.projections[i];
  return double(maps.N) * q;
}

double adjointness_residual(const BerezinMaps& maps, const CMatrix& a, const CVector& f) {
  const CVector s = symbol(maps, a);
  cplx lhs = 0.0;
  for (int i = 0; i < s.size(); ++i) lhs += maps.quad.weights(i) * std::conj(s(i)) * f(i);
  const cplx rhs = hs_inner(a, quantize(maps, f));
  return std::abs(lhs - rhs);
}

RMatrix geodesic_cost(const BerezinMaps& maps) {
  const RMatrix& x = maps.quad.nodes;
  const int n = static_cast<int>(x.rows());
  const double radius = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  RMatrix c(n, n);
  for (int i = 0; i < n; ++i) {
    c(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double cosang = std::clamp(x.row(i).dot(x.row(j)), -1.0, 1.0);
      c(i, j) = c(j, i) = radius * std::acos(cosang);
    }
  }
  return c;
}

double mean_geodesic(const BerezinMaps& maps) {
  const double radius = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  double acc = 0.0;
  for (int i = 0; i < maps.quad.nodes.rows(); ++i) {
    acc += maps.quad.weights(i) * radius * std::acos(std::clamp(maps.quad.nodes(i, 2), -1.0, 1.0));
  }
  return acc;
}

RVector symbol_distribution(const BerezinMaps& maps, const CMatrix& rho) {
  validate_density(rho);
  const CVector s = symbol(maps, rho);
  RVector m(s.size());
  for (int i = 0; i < s.size(); ++i) m(i) = std::max(0.0, maps.quad.weights(i) * maps.N * s(i).real());
  return m / m.sum();
}

double cost_distance(const BerezinMaps& maps, const RMatrix& cost, const CMatrix& rho, const CMatrix& tau) {
  return kantorovich(cost, symbol_distribution(maps, rho), symbol_distribution(maps, tau)).value;
}

double cost_distance(const BerezinMaps& maps, const CMatrix& rho, const CMatrix& tau) {
  return cost_distance(maps, geodesic_cost(maps), rho, tau);
}

double hs_norm(const CMatrix& a) { return std::sqrt(std::max(0.0, hs_inner(a, a).real())); }

}  // namespace specdist
