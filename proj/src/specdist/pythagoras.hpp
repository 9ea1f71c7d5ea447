#pragma once

// Product metrics and the Pythagoras inequalities for product triples.

#include <cstdint>
#include <string>

#include "specdist/engine.hpp"

namespace specdist {

/// sqrt(d1^2 + d2^2), +inf absorbing.
double product_metric(double d1, double d2);

enum class Verdict { Equality, Strict, Violation };
const char* to_string(Verdict v);

struct PythagorasReport {
  std::string left_label, right_label, phi_label, psi_label;
  double d1 = 0, d2 = 0;       // factor distances of the marginals
  double d_product = 0;        // sqrt(d1^2 + d2^2)
  double d_spectral = 0;       // distance on the product triple
  double ratio = 1;            // d_spectral / d_product
  Verdict verdict = Verdict::Equality;
  double equality_tol = 1e-4;
  bool product_states = true;  // two-sided bound applies
};

struct DTimes {
  double d1 = 0, d2 = 0, value = 0;
};

/// Solvers for one product triple and its factors, reused across state pairs.
class ProductLab {
 public:
  explicit ProductLab(ProductTriple p);

  const ProductTriple& product() const { return p_; }
  const DistanceSolver& left() const { return left_; }
  const DistanceSolver& right() const { return right_; }
  const DistanceSolver& combined() const { return combined_; }

  /// Auxiliary semi-metric: through the marginals, or (direct = true) as the
  /// supremum over a1 ⊗ 1 + 1 ⊗ a2.
  DTimes d_times(const State& phi, const State& psi, const Options& opts = {}, bool direct = false) const;

  /// `product_states` selects the two-sided bound; otherwise only the lower
  /// bound is asserted.
  PythagorasReport check(const State& phi, const State& psi, const Options& opts = {},
                         bool product_states = true) const;

 private:
  ProductTriple p_;
  DistanceSolver left_, right_, combined_;
};

PythagorasReport pythagoras_check(const ProductTriple& p, const State& phi, const State& psi,
                                  const Options& opts = {});
DTimes d_times(const ProductTriple& p, const State& phi, const State& psi, const Options& opts = {},
               bool direct = false);

/// P = phi1# ⊗ id + id ⊗ psi2# - phi1# ⊗ psi2#, as a matrix on product-basis
/// coefficients (left index outer), where phi1#(a) = phi1(a) 1.
struct IdempotentP {
  RVector phi1;  // phi1(B_j)
  RVector psi2;  // psi2(C_k)
  RVector unit1, unit2;
  RMatrix matrix;
  int rank = 0;
  double idempotency_defect = 0;  // ||P^2 - P||
};

IdempotentP build_P(const Triple& left, const State& phi1, const Triple& right, const State& psi2);

struct ContractionReport {
  int samples = 0;
  int violations = 0;
  double max_ratio = 0;  // max ||[D, P a]|| / ||[D, a]||
};

/// Samples random self-adjoint a and checks ||[D, P(a)]|| <= ||[D, a]||.
ContractionReport check_contraction(const DistanceSolver& combined, const IdempotentP& idem, int samples,
                                    std::uint64_t seed);

/// Sampled lower bound of the operator norm of the extension
///   P(b) = 1 ⊗ Tr_1((rho1 ⊗ 1) b) + Tr_2((1 ⊗ rho2) b) ⊗ 1 - Tr((rho1 ⊗ rho2) b) 1
/// on B(C^{n1} ⊗ C^{n2}). The identity and gamma1 ⊗ gamma2 (given gradings of
/// the factors' state spaces) are always included.
struct KEstimate {
  double k = 0;
  double witness = 0;  // ||P(gamma1 ⊗ gamma2)||
};
CMatrix apply_P_extension(const CMatrix& rho1, const CMatrix& rho2, const CMatrix& b);
KEstimate idempotent_norm_K(const CMatrix& rho1, const CMatrix& rho2, const CMatrix& gamma1, const CMatrix& gamma2,
                            int samples, std::uint64_t seed);

struct BlockReduction {
  double d_full = 0;
  double d_block = 0;
  bool holds = true;
};

/// Compares the distance between x_r ⊗ phi2 and x_s ⊗ psi2 on
/// finite_metric(x) × t2 with the one on the single (r, s) two-point block.
BlockReduction block_reduction_bound(const MetricSpace& x, const Triple& t2, int r, int s, const State& phi2,
                                     const State& psi2, const Options& opts = {});

}  // namespace specdist
