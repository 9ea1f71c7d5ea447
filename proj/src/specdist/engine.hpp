#pragma once

// Spectral distance d(phi, psi) = sup { phi(a) - psi(a) : a = a*, ||[D, a]|| <= 1 }.
//
// The algebra basis is first made trace-orthonormal. Directions commuting with
// D are split off: if phi and psi differ on one of them the distance is
// infinite, otherwise they are irrelevant. What remains is a linear objective
// over the unit ball of y -> ||[D, a(y)]||, solved on its block decomposition.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "specdist/lmi.hpp"
#include "specdist/triples.hpp"

namespace specdist {

enum class Method {
  Barrier,        // interior point on the norm constraint (default)
  Supergradient,  // ratio ascent with random restarts
};

struct Options {
  double tol = 1e-6;  // relative
  int max_iter = 500;
  std::uint64_t seed = 42;
  int restarts = 5;
  Method method = Method::Barrier;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct DistanceResult {
  double value = 0.0;  // may be +inf
  RVector optimizer;   // coefficients on the triple's basis (a for primal, b for dual)
  double gap = 0.0;
  int iterations = 0;

  bool infinite() const { return value == kInf; }
};

/// Precomputed reduction of one triple; reuse it for many state pairs.
class DistanceSolver {
 public:
  explicit DistanceSolver(const Triple& t);

  const Triple& triple() const { return triple_; }
  const LmiProblem& problem() const { return lmi_; }

  /// Orthonormal (trace inner product) basis of commutant directions, as
  /// coefficient vectors on the triple's basis.
  const RMatrix& commutant_coefficients() const { return commutant_coeffs_; }

  /// Distance for a pairing difference r_k = phi(B_k) - psi(B_k).
  DistanceResult primal(const RVector& r, const Options& opts = {}) const;
  DistanceResult primal(const State& phi, const State& psi, const Options& opts = {}) const;

  /// Same supremum restricted to elements whose coefficient vectors lie in
  /// the column span of `span`.
  DistanceResult primal_on_subspace(const RVector& r, const RMatrix& span, const Options& opts = {}) const;

  /// The L(rho) formula. Both states must be densities on the representation
  /// space with rho_phi - rho_psi in the algebra; otherwise RhoNotInAlgebra.
  DistanceResult dual(const State& phi, const State& psi, const Options& opts = {}) const;

  /// ||[D, a]|| for a = sum_k c_k B_k.
  double lip_norm(const RVector& c) const;

 private:
  Triple triple_;
  RMatrix to_coeffs_;  // c = T y: orthonormal coordinates -> basis coefficients
  RMatrix gram_;       // basis Gram S
  LmiProblem lmi_;     // operators i[D, e_k] for the orthonormal e_k
  RMatrix kernel_;     // orthonormal kernel of the map in y coordinates
  RMatrix commutant_coeffs_;
  RMatrix range_gram_;

  DistanceResult solve(const LmiProblem& lmi, const RMatrix& kernel, const RVector& rt, const RMatrix& to_coeffs,
                       const Options& opts) const;
  DistanceResult supergradient(const LmiProblem& lmi, const RMatrix& kernel, const RVector& s,
                               const RMatrix& to_coeffs, const Options& opts) const;
};

std::vector<SMatrix> commutant_directions(const Triple& t);

DistanceResult spectral_distance(const Triple& t, const State& phi, const State& psi, const Options& opts = {});
DistanceResult spectral_distance_dual(const Triple& t, const State& phi, const State& psi,
                                      const Options& opts = {});

}  // namespace specdist
