#pragma once

// The tetrahedron of states of C^2 ⊗ C^2 (classical bipartite case) embedded in
// R^3, and the projection of a state onto the product of its marginals.

#include <array>
#include <vector>

#include "specdist/matcore.hpp"

namespace specdist {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

/// Product of (1+t)/2, (1-t)/2 and (1+s)/2, (1-s)/2 on the 3-simplex.
Vec4 product_point(double t, double s);

/// Affine embedding of the 3-simplex sending its vertices to
/// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
Vec3 embed(const Vec4& phi);

/// Product of the two marginals of phi.
Vec4 marginal_product(const Vec4& phi);

struct SurfacePoint {
  double t, s;
  Vec3 xyz;
};

/// f(product_point(t, s)) on an n x n grid of [-1, 1]^2. Throws
/// InvalidArgument for n < 2.
std::vector<SurfacePoint> sample_surface(int n);

struct MarginalProjection {
  Vec3 f_phi;
  Vec3 f_flat;
  Vec4 flat;
  double residual;  // max difference of the first two coordinates
};

/// Throws NotProbability unless phi is a probability vector.
MarginalProjection marginal_projection(const Vec4& phi);

}  // namespace specdist
