#include "specdist/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specdist/error.hpp"

namespace specdist {

namespace {

constexpr double kKernelRelTol = 1e-12;   // eigenvalue ratio of the commutator Gram
constexpr double kSeparationTol = 1e-9;   // |phi(a0) - psi(a0)| for unit commutant a0
constexpr double kSpanResidualTol = 1e-10;

bool is_diagonal(const RMatrix& s) {
  const double scale = s.diagonal().cwiseAbs().maxCoeff();
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (i != j && std::abs(s(i, j)) > 1e-12 * scale) return false;
  return true;
}

}  // namespace

DistanceSolver::DistanceSolver(const Triple& t) : triple_(t) {
  const int m = t.algebra_dim();
  gram_ = basis_gram(t);
  if (is_diagonal(gram_)) {
    to_coeffs_ = RMatrix::Zero(m, m);
    for (int k = 0; k < m; ++k) to_coeffs_(k, k) = 1.0 / std::sqrt(gram_(k, k));
  } else {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(gram_);
    to_coeffs_ = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                 es.eigenvectors().transpose();
  }

  std::vector<SMatrix> comm(m);
  for (int k = 0; k < m; ++k) comm[k] = SMatrix(t.dirac * t.basis[k] - t.basis[k] * t.dirac) * cplx(0, 1);
  std::vector<SMatrix> ops(m);
  for (int k = 0; k < m; ++k) {
    ops[k] = SMatrix(t.dim, t.dim);
    for (int l = 0; l < m; ++l)
      if (to_coeffs_(l, k) != 0.0) ops[k] += comm[l] * cplx(to_coeffs_(l, k));
    ops[k].prune(cplx(0.0));
  }
  double scale = 0.0;
  for (const auto& op : ops)
    for (int o = 0; o < op.outerSize(); ++o)
      for (SMatrix::InnerIterator it(op, o); it; ++it) scale = std::max(scale, std::abs(it.value()));
  lmi_ = build_lmi(ops, 1e-14 * scale);

  range_gram_ = lmi_gram(lmi_);
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(range_gram_);
    const double top = std::max(0.0, es.eigenvalues()(m - 1));
    std::vector<int> cols;
    for (int k = 0; k < m; ++k)
      if (es.eigenvalues()(k) <= kKernelRelTol * top) cols.push_back(k);
    kernel_ = RMatrix(m, static_cast<int>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) kernel_.col(static_cast<int>(i)) = es.eigenvectors().col(cols[i]);
  }
  commutant_coeffs_ = to_coeffs_ * kernel_;
}

double DistanceSolver::lip_norm(const RVector& c) const {
  if (c.size() != triple_.algebra_dim()) throw Error(ErrorCode::DimensionMismatch, "lip_norm: coefficient count");
  const RVector y = to_coeffs_.transpose() * (gram_ * c);
  return lmi_norm(lmi_, y);
}

DistanceResult DistanceSolver::primal(const State& phi, const State& psi, const Options& opts) const {
  return primal(RVector(pairing(triple_, phi) - pairing(triple_, psi)), opts);
}

DistanceResult DistanceSolver::primal(const RVector& r, const Options& opts) const {
  if (r.size() != triple_.algebra_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "spectral_distance: pairing length differs from the algebra basis");
  }
  return solve(lmi_, kernel_, to_coeffs_.transpose() * r, to_coeffs_, opts);
}

DistanceResult DistanceSolver::primal_on_subspace(const RVector& r, const RMatrix& span, const Options& opts) const {
  const int m = triple_.algebra_dim();
  if (r.size() != m || span.rows() != m) {
    throw Error(ErrorCode::DimensionMismatch, "primal_on_subspace: coefficient length mismatch");
  }
  // Orthonormal coordinates z of the subspace inside the y coordinates.
  const RMatrix ys = to_coeffs_.transpose() * gram_ * span;
  Eigen::ColPivHouseholderQR<RMatrix> qr(ys);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  const RMatrix z = (qr.householderQ() * RMatrix::Identity(m, m)).leftCols(rank);

  LmiProblem sub;
  sub.nvars = rank;
  for (const auto& blk : lmi_.blocks) {
    LmiBlock nb;
    nb.size = blk.size;
    for (int l = 0; l < rank; ++l) {
      CMatrix acc = CMatrix::Zero(blk.size, blk.size);
      bool any = false;
      for (size_t i = 0; i < blk.vars.size(); ++i) {
        const double w = z(blk.vars[i], l);
        if (w != 0.0) {
          acc += w * blk.mats[i];
          any = true;
        }
      }
      if (any && acc.cwiseAbs().maxCoeff() > 0.0) {
        nb.vars.push_back(l);
        nb.mats.push_back(acc);
      }
    }
    if (!nb.vars.empty()) {
      sub.total_dim += nb.size;
      sub.blocks.push_back(std::move(nb));
    }
  }
  const RMatrix g = lmi_gram(sub);
  RMatrix kernel(rank, 0);
  if (rank > 0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
    const double top = std::max(0.0, es.eigenvalues()(rank - 1));
    std::vector<int> cols;
    for (int k = 0; k < rank; ++k)
      if (es.eigenvalues()(k) <= kKernelRelTol * top) cols.push_back(k);
    kernel.resize(rank, static_cast<int>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) kernel.col(static_cast<int>(i)) = es.eigenvectors().col(cols[i]);
  }
  const RVector rt = z.transpose() * (to_coeffs_.transpose() * r);
  return solve(sub, kernel, rt, to_coeffs_ * z, opts);
}

DistanceResult DistanceSolver::solve(const LmiProblem& lmi, const RMatrix& kernel, const RVector& rt,
                                     const RMatrix& to_coeffs, const Options& opts) const {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "spectral_distance: tol must be positive");
  DistanceResult res;
  RVector s = rt;
  if (kernel.cols() > 0) {
    const RVector proj = kernel.transpose() * rt;
    if (proj.cwiseAbs().maxCoeff() > kSeparationTol) {
      res.value = kInf;
      int best = 0;
      proj.cwiseAbs().maxCoeff(&best);
      res.optimizer = to_coeffs * kernel.col(best) * (proj(best) > 0 ? 1.0 : -1.0);
      return res;
    }
    s -= kernel * proj;
  }
  if (s.norm() <= 1e-14) {
    res.optimizer = RVector::Zero(to_coeffs.rows());
    return res;
  }
  if (opts.method == Method::Supergradient) return supergradient(lmi, kernel, s, to_coeffs, opts);
  const BarrierResult b = maximize_linear(lmi, s, kernel, opts.tol, opts.max_iter);
  res.value = b.value;
  res.gap = b.gap;
  res.iterations = b.iterations;
  res.optimizer = to_coeffs * b.y;
  return res;
}

DistanceResult DistanceSolver::supergradient(const LmiProblem& lmi, const RMatrix& kernel, const RVector& s,
                                             const RMatrix& to_coeffs, const Options& opts) const {
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  auto project = [&](RVector v) {
    if (kernel.cols() > 0) v -= kernel * (kernel.transpose() * v);
    return v;
  };
  double best = -kInf;
  RVector best_y = s;
  int total = 0;
  const int restarts = std::max(1, opts.restarts);
  for (int rs = 0; rs < restarts; ++rs) {
    RVector y = s;
    if (rs > 0) {
      RVector noise(s.size());
      for (int k = 0; k < noise.size(); ++k) noise(k) = normal(rng);
      y += 0.5 * s.norm() * project(noise).normalized();
    }
    y /= lmi_norm(lmi, y);
    double run_best = s.dot(y);
    if (run_best > best) {
      best = run_best;
      best_y = y;
    }
    int stable = 0;
    for (int k = 0; k < opts.max_iter && stable < 50; ++k, ++total) {
      double g = 0.0;
      const RVector sub = project(lmi_subgradient(lmi, y, &g, 1e-8));
      const RVector d = project(RVector(s - s.dot(y) * sub));
      if (d.norm() <= 1e-15 * s.norm()) break;
      const double alpha = 0.5 / std::sqrt(k + 1.0) * y.norm() / d.norm();
      y += alpha * d;
      y /= lmi_norm(lmi, y);
      const double val = s.dot(y);
      if (val > run_best + opts.tol * std::abs(run_best)) {
        run_best = val;
        stable = 0;
      } else {
        ++stable;
      }
      if (val > best) {
        best = val;
        best_y = y;
      }
    }
  }
  DistanceResult res;
  res.value = best;
  res.gap = kInf;  // ascent carries no certificate
  res.iterations = total;
  res.optimizer = to_coeffs * best_y;
  return res;
}

DistanceResult DistanceSolver::dual(const State& phi, const State& psi, const Options& opts) const {
  const Triple& t = triple_;
  if (!pairs_on_representation(t, phi) || !pairs_on_representation(t, psi)) {
    throw Error(ErrorCode::RhoNotInAlgebra,
                "dual formula unavailable: states must be density matrices on the representation space");
  }
  const int m = t.algebra_dim();
  const CMatrix rho = phi.rho - psi.rho;
  RVector r(m);
  for (int k = 0; k < m; ++k) r(k) = trace_product(rho, t.basis[k]).real();
  const RVector x = gram_.ldlt().solve(r);
  CMatrix resid = rho;
  for (int k = 0; k < m; ++k) resid -= CMatrix(t.basis[k]) * x(k);
  if (resid.norm() > kSpanResidualTol * std::max(1.0, rho.norm())) {
    throw Error(ErrorCode::RhoNotInAlgebra, "dual formula unavailable: rho_phi - rho_psi is not in the algebra");
  }

  DistanceResult res;
  RVector rt = to_coeffs_.transpose() * r;
  const double norm2 = rt.squaredNorm();
  if (norm2 <= 1e-28) {
    res.optimizer = RVector::Zero(m);
    return res;
  }
  const double zero_tol = 1e-9 * lmi_norm(lmi_, rt) + 1e-12;
  const int k = static_cast<int>(kernel_.cols());
  if (k > 0) {
    const RVector kc = kernel_.transpose() * rt;
    if (kc.norm() > kSeparationTol * std::sqrt(norm2)) {
      // rho + b can be taken inside the kernel with b orthogonal to rho.
      const RVector y = (norm2 / kc.squaredNorm()) * (kernel_ * kc);
      if (lmi_norm(lmi_, y) <= zero_tol) {
        res.value = kInf;
        res.optimizer = to_coeffs_ * RVector(y - rt);
        return res;
      }
    }
    rt -= kernel_ * kc;
  }

  // Orthonormal basis of the complement of span{rho, kernel}.
  RMatrix z(m, 1 + k);
  z.col(0) = rt.normalized();
  if (k > 0) z.rightCols(k) = kernel_;
  Eigen::HouseholderQR<RMatrix> qr(z);
  const RMatrix qfull = qr.householderQ() * RMatrix::Identity(m, m);
  const int p = m - 1 - k;
  RMatrix dirs(m, std::max(p, 0));
  if (p > 0) {
    const RMatrix q = qfull.rightCols(p);
    const RMatrix gq = q.transpose() * range_gram_ * q;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(gq);
    const RVector lam = es.eigenvalues().cwiseMax(1e-300);
    dirs = q * (es.eigenvectors() * lam.cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose());
  }
  const double f0 = lmi_norm(lmi_, rt);
  const double radius = 2.0 * std::sqrt(double(lmi_.total_dim)) * f0 * (1.0 + 1e-9) + 1e-300;
  const int cap = std::max(20 * opts.max_iter, 400 * (p + 1) * (p + 1));
  const EllipsoidResult e = minimize_norm(lmi_, rt, dirs, radius, opts.tol, cap);
  res.iterations = e.iterations;
  const RVector b = p > 0 ? RVector(dirs * e.u) : RVector::Zero(m);
  res.optimizer = to_coeffs_ * b;
  if (e.upper <= zero_tol) {
    res.value = kInf;
    return res;
  }
  res.value = norm2 / e.upper;
  res.gap = norm2 / std::max(e.lower, 1e-300) - res.value;
  if (!e.converged) {
    throw NoConvergence("dual formula: ellipsoid iteration limit reached", res.value, e.iterations);
  }
  return res;
}

std::vector<SMatrix> commutant_directions(const Triple& t) {
  DistanceSolver solver(t);
  std::vector<SMatrix> out;
  const RMatrix& c = solver.commutant_coefficients();
  for (int j = 0; j < c.cols(); ++j) out.push_back(element(t, c.col(j)));
  return out;
}

DistanceResult spectral_distance(const Triple& t, const State& phi, const State& psi, const Options& opts) {
  return DistanceSolver(t).primal(phi, psi, opts);
}

DistanceResult spectral_distance_dual(const Triple& t, const State& phi, const State& psi, const Options& opts) {
  return DistanceSolver(t).dual(phi, psi, opts);
}

}  // namespace specdist
