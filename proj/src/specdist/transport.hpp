#pragma once

// Discrete optimal transport between two probability vectors on N points.

#include "specdist/matcore.hpp"
#include "specdist/triples.hpp"

namespace specdist {

struct TransportPlan {
  RMatrix plan;    // p_ij: row-stochastic, sum_i phi_i p_ij = psi_j
  RMatrix flow;    // phi_i p_ij
  double value = 0.0;
  RVector dual_a;  // a_i + b_j <= c_ij
  RVector dual_b;
  double gap = 0.0;  // value - (phi.a + psi.b)
  int pivots = 0;
};

/// Minimum-cost coupling of p and q for the cost c (entries may be +inf).
/// Transportation simplex with lexicographic perturbation against
/// degeneracy. Rows with zero mass get the uniform distribution.
/// Throws Infeasible when infinite costs separate the supports.
TransportPlan kantorovich(const RMatrix& c, const RVector& p, const RVector& q);

/// kantorovich with c = g; +inf when the states live on different components.
double commutative_distance(const MetricSpace& x, const RVector& p, const RVector& q);

/// Throws NotProbability unless p >= 0 and sum p = 1 within 1e-10.
void validate_probability(const RVector& p);

}  // namespace specdist
