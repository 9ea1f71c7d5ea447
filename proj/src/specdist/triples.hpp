#pragma once

// Finite spectral triples, states and products.
//
// A triple stores the represented algebra extensionally: a list of Hermitian
// operators B_k on the representation space spanning the self-adjoint part of
// the algebra. Self-adjoint elements are real combinations a = sum_k c_k B_k.
//
// A triple may also carry a "defining" basis A_k: the same algebra elements
// written as matrices of the abstract algebra (e_kk for C^N, Pauli matrices for
// M_2). States given as density matrices of the defining size pair through it,
// which is how simplex points and Bloch vectors are evaluated on triples whose
// representation is degenerate or amplified.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specdist/matcore.hpp"

namespace specdist {

struct MetricSpace {
  int size = 0;
  RMatrix g;  // symmetric, zero diagonal, entries may be +inf
};

/// Checks symmetry, zero diagonal, positivity and the triangle inequality.
/// Throws Error(Validation) naming the first violated condition.
void validate_metric(const MetricSpace& x);
MetricSpace make_metric(const RMatrix& g);

struct Triple {
  std::string label;
  int dim = 0;
  SMatrix dirac;
  std::optional<SMatrix> grading;
  std::vector<SMatrix> basis;
  std::vector<CMatrix> defining;
  bool unital = false;
  // The Bloch conjugation triple acts real-linearly on M_2 viewed as R^8.
  bool real_linear = false;

  bool even() const { return grading.has_value(); }
  int algebra_dim() const { return static_cast<int>(basis.size()); }
  /// Size of the matrices states are written in: the defining size when a
  /// defining basis exists, else the representation dimension.
  int state_dim() const { return defining.empty() ? dim : static_cast<int>(defining.front().rows()); }
};

/// Assembles and validates a triple. `unital` is computed.
Triple make_triple(std::string label, SMatrix dirac, std::optional<SMatrix> grading,
                   std::vector<SMatrix> basis, std::vector<CMatrix> defining = {},
                   bool real_linear = false);

/// Throws Error(Validation / NotHermitian / DimensionMismatch) on the first
/// violated invariant.
void validate_triple(const Triple& t);

/// Gram matrix S_kl = Re Tr(B_k B_l) of the represented basis.
RMatrix basis_gram(const Triple& t);

/// Coordinates of the algebra unit in the basis. Uses the defining basis when
/// present, else the identity of the representation space. Throws NonUnital.
RVector identity_coordinates(const Triple& t);

/// Assemble sum_k c_k B_k.
SMatrix element(const Triple& t, const RVector& c);

// Algebra bases.
std::vector<CMatrix> diagonal_basis(int n);
/// Hermitian basis of M_n: e_kk, then e_jk + e_kj and -i e_jk + i e_kj for j < k.
std::vector<CMatrix> matrix_basis(int n);
/// {1, sigma1, sigma2, sigma3}.
std::vector<CMatrix> pauli_basis();
/// a -> a ⊗ 1_m for every basis element.
std::vector<SMatrix> amplify(const std::vector<CMatrix>& basis, int m);
std::vector<SMatrix> to_sparse(const std::vector<CMatrix>& mats);

// Concrete triples.
Triple two_point_triple(double lambda);
/// Three-point simplex: H = C^3 ⊕ C^3, a -> a ⊕ a, D = [[0, D-], [D+, 0]].
Triple simplex_triple();
Triple finite_metric_triple(const MetricSpace& x);
/// Bloch triples on M_2.
Triple bloch_conjugation_triple();
Triple bloch_flip_triple();
Triple bloch_moyal_triple();
/// Commutative algebra C^n on C^n with the given Dirac operator.
Triple diagonal_triple(const CMatrix& dirac, std::string label = "diagonal");

struct ProductTriple {
  Triple left;
  Triple right;
  Triple combined;
};

/// D = D1 ⊗ 1 + gamma1 ⊗ D2, basis B_j ⊗ C_k (j outer). Throws MissingGrading.
ProductTriple product_triple(const Triple& t1, const Triple& t2);

/// H ⊗ C^2, D ⊗ sigma1, gamma = 1 ⊗ sigma3, a -> a ⊗ 1. Throws AlreadyEven.
Triple evenize(const Triple& t);

struct State {
  enum class Kind { Density, Values };
  Kind kind = Kind::Density;
  CMatrix rho;    // Density
  RVector values; // Values: phi(B_k) on the triple's basis
  std::string label;

  static State density(const CMatrix& rho, std::string label = {});
  static State from_values(const RVector& values, std::string label = {});
};

/// Throws Error(Validation) unless rho is Hermitian, unit trace and positive
/// within 1e-10.
void validate_density(const CMatrix& rho);

/// phi(B_k) for every basis element.
RVector pairing(const Triple& t, const State& s);

/// True when a density state pairs through the representation space (not the
/// defining basis). Only such states can enter the dual formula.
bool pairs_on_representation(const Triple& t, const State& s);

CMatrix bloch_density(const RVector& x);
State state_from_bloch(const RVector& x);
State state_from_simplex(const RVector& p);
State state_pure(const CVector& v);

/// Partial traces (rho_1, rho_2) of a density on C^{n1} ⊗ C^{n2}.
std::pair<CMatrix, CMatrix> marginals(const CMatrix& rho, int n1, int n2);
std::pair<State, State> marginals(const ProductTriple& p, const State& s);
State product_state(const ProductTriple& p, const State& s1, const State& s2);

CMatrix peres_partial_transpose(const CMatrix& rho, int n1, int n2);

}  // namespace specdist
