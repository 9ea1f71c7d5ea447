#pragma once

// Block-sparse linear matrix maps y -> A(y) = sum_j y_j K_j with Hermitian K_j,
// and the two convex solvers built on them:
//   * a log-barrier interior-point method for  max s.y  s.t.  ||A(y)|| <= 1
//   * a central-cut ellipsoid method for       min ||A(y0 + M u)||
// Blocks come from the connected components of the union sparsity pattern, so
// ||A(y)|| is the maximum over small dense eigenproblems.

#include <vector>

#include "specdist/matcore.hpp"

namespace specdist {

struct LmiBlock {
  std::vector<int> vars;       // global variable indices touching this block
  std::vector<CMatrix> mats;   // restriction of K_vars[i] to the block
  int size = 0;
};

struct LmiProblem {
  int nvars = 0;
  int total_dim = 0;  // sum of block sizes
  std::vector<LmiBlock> blocks;
};

/// Splits the operators into independent diagonal blocks. Entries with
/// modulus <= drop_tol are treated as structural zeros.
LmiProblem build_lmi(const std::vector<SMatrix>& ops, double drop_tol = 0.0);

CMatrix block_value(const LmiBlock& b, const RVector& y);

/// ||A(y)||.
double lmi_norm(const LmiProblem& p, const RVector& y);

/// A supergradient of y -> ||A(y)||: sign(lambda) <v, K_j v> from the top
/// eigenpair, averaged over eigenpairs within `near_tol` (relative) of the top.
RVector lmi_subgradient(const LmiProblem& p, const RVector& y, double* norm_out = nullptr,
                        double near_tol = 0.0);

/// G_ij = Re Tr(K_i K_j).
RMatrix lmi_gram(const LmiProblem& p);

struct BarrierResult {
  RVector y;         // on the boundary ||A(y)|| = 1
  double value = 0;  // s.y
  double gap = 0;    // central-path duality gap bound
  int iterations = 0;
};

/// max s.y subject to ||A(y)|| <= 1. `kernel` holds orthonormal columns
/// spanning ker A; s must be orthogonal to it. Relative tolerance `tol`.
/// Throws NoConvergence after `max_iter` Newton steps.
BarrierResult maximize_linear(const LmiProblem& p, const RVector& s, const RMatrix& kernel, double tol,
                              int max_iter);

struct EllipsoidResult {
  RVector u;
  double upper = 0;  // best ||A(y0 + M u)|| found
  double lower = 0;  // certified lower bound on the minimum
  int iterations = 0;
  bool converged = false;
};

/// min_u ||A(y0 + M u)|| with the minimizer known to satisfy ||u|| <= radius.
EllipsoidResult minimize_norm(const LmiProblem& p, const RVector& y0, const RMatrix& m, double radius, double tol,
                              int max_iter);

}  // namespace specdist
