#pragma once

// Closed-form distances used as ground truth for the engine.

#include "specdist/matcore.hpp"

namespace specdist::oracles {

/// |phi - psi| for states phi, psi in [-lambda, lambda] of the two-point space.
double two_point_distance(double lambda, double phi, double psi);

/// ||p - q||_inf on the 2-simplex.
double simplex3_distance(const RVector& p, const RVector& q);

/// ||x - y||_2 on the Bloch ball (conjugation and flip triples agree).
double bloch_conjugation_distance(const RVector& x, const RVector& y);
double bloch_flip_distance(const RVector& x, const RVector& y);

/// c(theta) with theta the polar angle of x - y.
double moyal_c(double theta);
/// c(theta) ||x - y||_2; 0 when x = y.
double bloch_truncated_moyal_distance(const RVector& x, const RVector& y);

/// sqrt(1 - |<v, w>|^2) for unit vectors.
double purified_distance_pure(const CVector& v, const CVector& w);
/// 2^{-1/2} sqrt(1 - x.y - sqrt(1 - |x|^2) sqrt(1 - |y|^2)).
double purified_distance_qubit(const RVector& x, const RVector& y);

/// sqrt(2)|x3| + sqrt((x1 + x3 psi2)^2 + (x2 + x3 phi1)^2): the Lipschitz norm
/// on the two-point x two-point product.
double two_two_point_lipnorm(double x1, double x2, double x3, double phi1, double psi2);

}  // namespace specdist::oracles
