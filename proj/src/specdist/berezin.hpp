#pragma once

// Berezin symbol and quantization for the fundamental representation of
// SU(2), with the sphere discretized by a Fibonacci lattice.

#include <vector>

#include "specdist/matcore.hpp"

namespace specdist {

struct SphereQuadrature {
  RMatrix nodes;    // n x 3, unit vectors
  RVector weights;  // equal, summing to 1
};

SphereQuadrature fibonacci_sphere(int n);

struct BerezinMaps {
  int N = 2;
  CMatrix P;                         // projection onto the +1 eigenvector of sigma3
  SphereQuadrature quad;
  std::vector<CMatrix> rotations;    // U_x in SU(2) taking the north pole to x
  std::vector<CMatrix> projections;  // alpha_x(P) = U_x P U_x*
};

/// Rotation by the geodesic from the north pole to `n` (axis z × n).
CMatrix su2_rotation_to(const RVector& n);

BerezinMaps berezin_maps(int n = 800);

/// sigma_a(x_i) = Tr(alpha_{x_i}(P) a).
CVector symbol(const BerezinMaps& maps, const CMatrix& a);

/// Q_f = N sum_i w_i alpha_{x_i}(P) f(x_i).
CMatrix quantize(const BerezinMaps& maps, const CVector& f);

/// |<sigma_a, f>_quad - <a, Q_f>_HS| with <a, b>_HS = Tr(a* b) / N.
double adjointness_residual(const BerezinMaps& maps, const CMatrix& a, const CVector& f);

/// Great-circle distance between nodes on the sphere of area 1.
RMatrix geodesic_cost(const BerezinMaps& maps);

/// Quadrature mean of the geodesic distance from the base point.
double mean_geodesic(const BerezinMaps& maps);

/// Node masses w_i N sigma_rho(x_i), renormalized to sum 1.
RVector symbol_distribution(const BerezinMaps& maps, const CMatrix& rho);

/// Wasserstein-1 between the symbol distributions of two density matrices.
double cost_distance(const BerezinMaps& maps, const CMatrix& rho, const CMatrix& tau);
double cost_distance(const BerezinMaps& maps, const RMatrix& cost, const CMatrix& rho, const CMatrix& tau);

/// sqrt(<a, a>_HS).
double hs_norm(const CMatrix& a);

}  // namespace specdist
