#include "specdist/pythagoras.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "specdist/error.hpp"

namespace specdist {

namespace {

constexpr double kEqualityTol = 1e-4;

Verdict classify(double ratio, bool product_states) {
  if (std::abs(ratio - 1.0) <= kEqualityTol) return Verdict::Equality;
  if (ratio < 1.0 - kEqualityTol) return Verdict::Violation;
  if (product_states && ratio > std::numbers::sqrt2 + kEqualityTol) return Verdict::Violation;
  return Verdict::Strict;
}

}  // namespace

double product_metric(double d1, double d2) {
  if (d1 < 0.0 || d2 < 0.0) throw Error(ErrorCode::InvalidArgument, "product_metric: distances must be >= 0");
  if (std::isinf(d1) || std::isinf(d2)) return kInf;
  return std::hypot(d1, d2);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equality: return "equality";
    case Verdict::Strict: return "strict";
    case Verdict::Violation: return "violation";
  }
  return "unknown";
}

ProductLab::ProductLab(ProductTriple p)
    : p_(std::move(p)), left_(p_.left), right_(p_.right), combined_(p_.combined) {}

DTimes ProductLab::d_times(const State& phi, const State& psi, const Options& opts, bool direct) const {
  DTimes out;
  if (!direct) {
    const auto [p1, p2] = marginals(p_, phi);
    const auto [q1, q2] = marginals(p_, psi);
    out.d1 = left_.primal(p1, q1, opts).value;
    out.d2 = right_.primal(p2, q2, opts).value;
    out.value = product_metric(out.d1, out.d2);
    return out;
  }
  const int m1 = p_.left.algebra_dim(), m2 = p_.right.algebra_dim();
  const RVector e1 = identity_coordinates(p_.left), e2 = identity_coordinates(p_.right);
  RMatrix span = RMatrix::Zero(m1 * m2, m1 + m2);
  for (int j = 0; j < m1; ++j)
    for (int k = 0; k < m2; ++k) {
      span(j * m2 + k, j) = e2(k);
      span(j * m2 + k, m1 + k) = e1(j);
    }
  const RVector r = pairing(p_.combined, phi) - pairing(p_.combined, psi);
  out.value = combined_.primal_on_subspace(r, span, opts).value;
  out.d1 = out.d2 = std::numeric_limits<double>::quiet_NaN();
  return out;
}

PythagorasReport ProductLab::check(const State& phi, const State& psi, const Options& opts,
                                   bool product_states) const {
  PythagorasReport rep;
  rep.left_label = p_.left.label;
  rep.right_label = p_.right.label;
  rep.phi_label = phi.label;
  rep.psi_label = psi.label;
  rep.product_states = product_states;
  rep.equality_tol = kEqualityTol;
  const DTimes dt = d_times(phi, psi, opts);
  rep.d1 = dt.d1;
  rep.d2 = dt.d2;
  rep.d_product = dt.value;
  rep.d_spectral = combined_.primal(phi, psi, opts).value;
  if (std::isinf(rep.d_product) && std::isinf(rep.d_spectral)) {
    rep.ratio = 1.0;
  } else if (rep.d_product == 0.0) {
    rep.ratio = rep.d_spectral <= 1e-12 ? 1.0 : kInf;
  } else {
    rep.ratio = rep.d_spectral / rep.d_product;
  }
  rep.verdict = classify(rep.ratio, product_states);
  return rep;
}

PythagorasReport pythagoras_check(const ProductTriple& p, const State& phi, const State& psi, const Options& opts) {
  return ProductLab(p).check(phi, psi, opts);
}

DTimes d_times(const ProductTriple& p, const State& phi, const State& psi, const Options& opts, bool direct) {
  return ProductLab(p).d_times(phi, psi, opts, direct);
}

IdempotentP build_P(const Triple& left, const State& phi1, const Triple& right, const State& psi2) {
  IdempotentP out;
  if (!left.unital && left.defining.empty()) {
    throw Error(ErrorCode::NonUnital, "build_P: left factor is not unital");
  }
  if (!right.unital && right.defining.empty()) {
    throw Error(ErrorCode::NonUnital, "build_P: right factor is not unital");
  }
  out.unit1 = identity_coordinates(left);
  out.unit2 = identity_coordinates(right);
  out.phi1 = pairing(left, phi1);
  out.psi2 = pairing(right, psi2);
  const int m1 = left.algebra_dim(), m2 = right.algebra_dim();
  const RMatrix a1 = out.unit1 * out.phi1.transpose();
  const RMatrix a2 = out.unit2 * out.psi2.transpose();
  auto rkron = [](const RMatrix& a, const RMatrix& b) {
    RMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
  };
  const RMatrix i1 = RMatrix::Identity(m1, m1), i2 = RMatrix::Identity(m2, m2);
  out.matrix = rkron(a1, i2) + rkron(i1, a2) - rkron(a1, a2);
  out.idempotency_defect = (out.matrix * out.matrix - out.matrix).norm();
  Eigen::ColPivHouseholderQR<RMatrix> qr(out.matrix);
  qr.setThreshold(1e-10);
  out.rank = static_cast<int>(qr.rank());
  return out;
}

ContractionReport check_contraction(const DistanceSolver& combined, const IdempotentP& idem, int samples,
                                    std::uint64_t seed) {
  ContractionReport rep;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int m = static_cast<int>(idem.matrix.rows());
  for (int s = 0; s < samples; ++s) {
    RVector c(m);
    for (int k = 0; k < m; ++k) c(k) = normal(rng);
    const double before = combined.lip_norm(c);
    const double after = combined.lip_norm(idem.matrix * c);
    ++rep.samples;
    if (before > 0.0) rep.max_ratio = std::max(rep.max_ratio, after / before);
    if (after > before * (1.0 + 1e-10) + 1e-10) ++rep.violations;
  }
  return rep;
}

CMatrix apply_P_extension(const CMatrix& rho1, const CMatrix& rho2, const CMatrix& b) {
  const int n1 = static_cast<int>(rho1.rows()), n2 = static_cast<int>(rho2.rows());
  const CMatrix id1 = CMatrix::Identity(n1, n1), id2 = CMatrix::Identity(n2, n2);
  const CMatrix left = partial_trace_left(CMatrix(kron(rho1, id2) * b), n1, n2);
  const CMatrix right = partial_trace_right(CMatrix(kron(id1, rho2) * b), n1, n2);
  const cplx both = (kron(rho1, rho2) * b).trace();
  return kron(id1, left) + kron(right, id2) - both * CMatrix::Identity(n1 * n2, n1 * n2);
}

KEstimate idempotent_norm_K(const CMatrix& rho1, const CMatrix& rho2, const CMatrix& gamma1, const CMatrix& gamma2,
                            int samples, std::uint64_t seed) {
  const int n = static_cast<int>(rho1.rows() * rho2.rows());
  auto ratio = [&](const CMatrix& b) {
    const double nb = operator_norm(b);
    return nb > 0.0 ? operator_norm(apply_P_extension(rho1, rho2, b)) / nb : 0.0;
  };
  KEstimate out;
  out.witness = ratio(kron(gamma1, gamma2));
  out.k = std::max(out.witness, ratio(CMatrix::Identity(n, n)));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int s = 0; s < samples; ++s) {
    CMatrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = cplx(normal(rng), normal(rng));
    if (s % 2 == 0) b = (b + b.adjoint()) * 0.5;
    out.k = std::max(out.k, ratio(b));
  }
  return out;
}

BlockReduction block_reduction_bound(const MetricSpace& x, const Triple& t2, int r, int s, const State& phi2,
                                     const State& psi2, const Options& opts) {
  validate_metric(x);
  if (r < 0 || s < 0 || r >= x.size || s >= x.size || r == s) {
    throw Error(ErrorCode::InvalidArgument, "block_reduction_bound: r and s must be distinct point indices");
  }
  BlockReduction out;
  const ProductTriple full = product_triple(finite_metric_triple(x), t2);
  RVector pr = RVector::Zero(x.size), ps = RVector::Zero(x.size);
  pr(r) = 1.0;
  ps(s) = 1.0;
  out.d_full = spectral_distance(full.combined, product_state(full, state_from_simplex(pr), phi2),
                                 product_state(full, state_from_simplex(ps), psi2), opts)
                   .value;
  const double g = x.g(r, s);
  if (std::isinf(g)) {
    out.d_block = kInf;
  } else {
    const ProductTriple block = product_triple(two_point_triple(g / 2.0), t2);
    RVector up(2), down(2);
    up << 1.0, 0.0;
    down << 0.0, 1.0;
    out.d_block = spectral_distance(block.combined, product_state(block, state_from_simplex(up), phi2),
                                    product_state(block, state_from_simplex(down), psi2), opts)
                      .value;
  }
  out.holds = out.d_full <= out.d_block * (1.0 + 10 * opts.tol) + 1e-12;
  return out;
}

}  // namespace specdist
