#include "specdist/surface.hpp"

#include <algorithm>
#include <cmath>

#include "specdist/error.hpp"
#include "specdist/transport.hpp"

namespace specdist {

Vec4 product_point(double t, double s) {
  return {(1 + t) * (1 + s) / 4, (1 + t) * (1 - s) / 4, (1 - t) * (1 + s) / 4, (1 - t) * (1 - s) / 4};
}

Vec3 embed(const Vec4& p) {
  return {p[0] + p[1] - p[2] - p[3], p[0] - p[1] + p[2] - p[3], p[0] - p[1] - p[2] + p[3]};
}

Vec4 marginal_product(const Vec4& phi) {
  const Vec3 f = embed(phi);
  return product_point(f[0], f[1]);
}

std::vector<SurfacePoint> sample_surface(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sample_surface: need n >= 2");
  std::vector<SurfacePoint> out;
  out.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double t = -1.0 + 2.0 * i / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double s = -1.0 + 2.0 * k / (n - 1);
      out.push_back({t, s, embed(product_point(t, s))});
    }
  }
  return out;
}

MarginalProjection marginal_projection(const Vec4& phi) {
  validate_probability(Eigen::Map<const RVector>(phi.data(), 4));
  MarginalProjection out;
  out.f_phi = embed(phi);
  out.flat = marginal_product(phi);
  out.f_flat = embed(out.flat);
  out.residual = std::max(std::abs(out.f_phi[0] - out.f_flat[0]), std::abs(out.f_phi[1] - out.f_flat[1]));
  return out;
}

}  // namespace specdist
