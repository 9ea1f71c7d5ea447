#include "specdist/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specdist/error.hpp"

namespace specdist {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Eigen::SelfAdjointEigenSolver<CMatrix> block_eig(const LmiBlock& b, const RVector& y, bool vectors) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(block_value(b, y),
                                                vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

// Barrier -sum log(1 - lambda) - sum log(1 + lambda); +inf outside the domain.
double barrier_value(const LmiProblem& p, const RVector& y) {
  double phi = 0.0;
  for (const auto& b : p.blocks) {
    const RVector lam = block_eig(b, y, false).eigenvalues();
    for (int a = 0; a < lam.size(); ++a) {
      const double lo = 1.0 + lam(a), hi = 1.0 - lam(a);
      if (!(lo > 0.0) || !(hi > 0.0)) return std::numeric_limits<double>::infinity();
      phi -= std::log(lo) + std::log(hi);
    }
  }
  return phi;
}

void barrier_derivatives(const LmiProblem& p, const RVector& y, RVector& grad, RMatrix& hess) {
  grad.setZero(p.nvars);
  hess.setZero(p.nvars, p.nvars);
  for (const auto& b : p.blocks) {
    const auto es = block_eig(b, y, true);
    const RVector& lam = es.eigenvalues();
    const CMatrix& v = es.eigenvectors();
    const int n = b.size;
    const int nv = static_cast<int>(b.vars.size());
    RVector dg(n);
    RMatrix w(n, n);
    for (int a = 0; a < n; ++a) {
      dg(a) = 1.0 / (1.0 - lam(a)) - 1.0 / (1.0 + lam(a));
      for (int c = 0; c < n; ++c)
        w(a, c) = 1.0 / ((1.0 - lam(a)) * (1.0 - lam(c))) + 1.0 / ((1.0 + lam(a)) * (1.0 + lam(c)));
    }
    std::vector<CMatrix> kp(nv);
    for (int i = 0; i < nv; ++i) {
      kp[i] = v.adjoint() * b.mats[i] * v;
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += kp[i](a, a).real() * dg(a);
      grad(b.vars[i]) += acc;
    }
    for (int i = 0; i < nv; ++i)
      for (int j = i; j < nv; ++j) {
        const double h = (kp[i].real().cwiseProduct(kp[j].real()) + kp[i].imag().cwiseProduct(kp[j].imag()))
                             .cwiseProduct(w)
                             .sum();
        hess(b.vars[i], b.vars[j]) += h;
        if (i != j) hess(b.vars[j], b.vars[i]) += h;
      }
  }
}

}  // namespace

LmiProblem build_lmi(const std::vector<SMatrix>& ops, double drop_tol) {
  LmiProblem p;
  p.nvars = static_cast<int>(ops.size());
  if (ops.empty()) return p;
  const int n = static_cast<int>(ops.front().rows());
  UnionFind uf(n);
  std::vector<char> touched(n, 0);
  for (const auto& op : ops)
    for (int k = 0; k < op.outerSize(); ++k)
      for (SMatrix::InnerIterator it(op, k); it; ++it) {
        if (std::abs(it.value()) <= drop_tol) continue;
        touched[it.row()] = touched[it.col()] = 1;
        uf.unite(static_cast<int>(it.row()), static_cast<int>(it.col()));
      }
  std::vector<int> comp_of_root(n, -1), comp(n, -1), local(n, -1);
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) {
    if (!touched[i]) continue;
    const int r = uf.find(i);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(sizes.size());
      sizes.push_back(0);
    }
    comp[i] = comp_of_root[r];
    local[i] = sizes[comp[i]]++;
  }
  p.blocks.resize(sizes.size());
  for (size_t c = 0; c < sizes.size(); ++c) {
    p.blocks[c].size = sizes[c];
    p.total_dim += sizes[c];
  }
  std::vector<int> slot(sizes.size(), -1);
  for (int k = 0; k < p.nvars; ++k) {
    std::fill(slot.begin(), slot.end(), -1);
    const auto& op = ops[k];
    for (int o = 0; o < op.outerSize(); ++o)
      for (SMatrix::InnerIterator it(op, o); it; ++it) {
        if (std::abs(it.value()) <= drop_tol) continue;
        const int c = comp[it.row()];
        auto& blk = p.blocks[c];
        if (slot[c] < 0) {
          slot[c] = static_cast<int>(blk.vars.size());
          blk.vars.push_back(k);
          blk.mats.push_back(CMatrix::Zero(blk.size, blk.size));
        }
        blk.mats[slot[c]](local[it.row()], local[it.col()]) = it.value();
      }
  }
  for (auto& blk : p.blocks)
    for (auto& m : blk.mats) m = (m + m.adjoint()) * 0.5;
  return p;
}

CMatrix block_value(const LmiBlock& b, const RVector& y) {
  CMatrix a = CMatrix::Zero(b.size, b.size);
  for (size_t i = 0; i < b.vars.size(); ++i) {
    const double c = y(b.vars[i]);
    if (c != 0.0) a += c * b.mats[i];
  }
  return a;
}

double lmi_norm(const LmiProblem& p, const RVector& y) {
  double out = 0.0;
  for (const auto& b : p.blocks) {
    const RVector lam = block_eig(b, y, false).eigenvalues();
    out = std::max({out, std::abs(lam(0)), std::abs(lam(lam.size() - 1))});
  }
  return out;
}

RVector lmi_subgradient(const LmiProblem& p, const RVector& y, double* norm_out, double near_tol) {
  double top = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<CMatrix>> eigs;
  eigs.reserve(p.blocks.size());
  for (const auto& b : p.blocks) {
    eigs.push_back(block_eig(b, y, true));
    const RVector& lam = eigs.back().eigenvalues();
    top = std::max({top, std::abs(lam(0)), std::abs(lam(lam.size() - 1))});
  }
  RVector g = RVector::Zero(p.nvars);
  int count = 0;
  const double cutoff = top - near_tol * std::max(1.0, top);
  for (size_t bi = 0; bi < p.blocks.size(); ++bi) {
    const auto& b = p.blocks[bi];
    const RVector& lam = eigs[bi].eigenvalues();
    const CMatrix& v = eigs[bi].eigenvectors();
    for (int a = 0; a < lam.size(); ++a) {
      const double mag = std::abs(lam(a));
      if (near_tol == 0.0 ? (count > 0 || mag < top) : mag < cutoff) continue;
      const double sgn = lam(a) >= 0.0 ? 1.0 : -1.0;
      for (size_t i = 0; i < b.vars.size(); ++i) {
        g(b.vars[i]) += sgn * (v.col(a).adjoint() * b.mats[i] * v.col(a))(0, 0).real();
      }
      ++count;
    }
  }
  if (count > 1) g /= count;
  if (norm_out) *norm_out = top;
  return g;
}

RMatrix lmi_gram(const LmiProblem& p) {
  RMatrix g = RMatrix::Zero(p.nvars, p.nvars);
  for (const auto& b : p.blocks)
    for (size_t i = 0; i < b.vars.size(); ++i)
      for (size_t j = i; j < b.vars.size(); ++j) {
        const double v = trace_inner(b.mats[i], b.mats[j]).real();
        g(b.vars[i], b.vars[j]) += v;
        if (i != j) g(b.vars[j], b.vars[i]) += v;
      }
  return g;
}

BarrierResult maximize_linear(const LmiProblem& p, const RVector& s, const RMatrix& kernel, double tol,
                              int max_iter) {
  const int m = p.nvars;
  BarrierResult res;
  auto project = [&](RVector v) {
    if (kernel.cols() > 0) v -= kernel * (kernel.transpose() * v);
    return v;
  };
  const RVector sp = project(s);
  if (sp.norm() == 0.0 || p.total_dim == 0) {
    res.y = RVector::Zero(m);
    return res;
  }
  const double n_tot = p.total_dim;
  const double v_est = sp.squaredNorm() / std::max(lmi_norm(p, sp), 1e-300);
  double t = n_tot / v_est;
  const double mu = 8.0;

  RVector y = RVector::Zero(m);
  RVector grad;
  RMatrix hess;
  int steps = 0;
  auto best_lower = [&]() {
    const double nrm = lmi_norm(p, y);
    return nrm > 0.0 ? sp.dot(y) / nrm : 0.0;
  };

  // Centering is inexact: a stage ends after kStageSteps Newton steps even if
  // the decrement is still above threshold. Ill-conditioned stages otherwise
  // creep forward with tiny accepted steps.
  constexpr int kStageSteps = 60;
  for (;;) {
    for (int inner = 0; inner < kStageSteps; ++inner) {
      barrier_derivatives(p, y, grad, hess);
      RVector g = project(RVector(grad - t * sp));
      if (kernel.cols() > 0) {
        const double reg = std::max(1.0, hess.trace() / m);
        hess += reg * kernel * kernel.transpose();
      }
      RVector dy = project(RVector(hess.ldlt().solve(-g)));
      const double dec = -g.dot(dy);
      if (!(dec > 2e-10)) break;
      const double f0 = -t * sp.dot(y) + barrier_value(p, y);
      double alpha = 1.0;
      RVector yn = y;
      bool moved = false;
      while (alpha > 1e-14) {
        yn = y + alpha * dy;
        const double fn = -t * sp.dot(yn) + barrier_value(p, yn);
        if (std::isfinite(fn) && fn <= f0 - 0.25 * alpha * dec) {
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
      y = yn;
      if (++steps > max_iter) {
        throw NoConvergence("barrier method: Newton iteration limit reached", best_lower(), steps);
      }
    }
    const double value = sp.dot(y);
    const double gap = 2.0 * n_tot / t;
    if (gap <= tol * std::max(value, 1e-300) || gap < 1e-15 * v_est) {
      const double nrm = lmi_norm(p, y);
      res.y = y / nrm;
      res.value = sp.dot(res.y);
      res.gap = std::max(0.0, value + gap - res.value);
      res.iterations = steps;
      return res;
    }
    t *= mu;
  }
}

EllipsoidResult minimize_norm(const LmiProblem& p, const RVector& y0, const RMatrix& m, double radius, double tol,
                              int max_iter) {
  EllipsoidResult res;
  const int dim = static_cast<int>(m.cols());
  if (dim == 0) {
    res.u = RVector();
    res.upper = res.lower = lmi_norm(p, y0);
    res.converged = true;
    return res;
  }
  RVector c = RVector::Zero(dim);
  RMatrix pm = RMatrix::Identity(dim, dim) * radius * radius;
  res.upper = std::numeric_limits<double>::infinity();
  res.lower = 0.0;
  res.u = c;
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    double f = 0.0;
    const RVector gy = lmi_subgradient(p, y0 + m * c, &f);
    const RVector g = m.transpose() * gy;
    if (f < res.upper) {
      res.upper = f;
      res.u = c;
    }
    const double gpg = g.dot(pm * g);
    if (!(gpg > 0.0)) {
      res.lower = std::max(res.lower, f);
      res.converged = true;
      break;
    }
    res.lower = std::max(res.lower, f - std::sqrt(gpg));
    if (res.upper - res.lower <= tol * res.upper) {
      res.converged = true;
      break;
    }
    if (dim == 1) {
      const double half = std::sqrt(pm(0, 0));
      c(0) -= (g(0) > 0.0 ? 0.5 : -0.5) * half;
      pm(0, 0) *= 0.25;
    } else {
      const RVector pg = pm * g / std::sqrt(gpg);
      const double n = dim;
      c -= pg / (n + 1.0);
      pm = (n * n / (n * n - 1.0)) * (pm - (2.0 / (n + 1.0)) * pg * pg.transpose());
      pm = (pm + pm.transpose()) * 0.5;
    }
  }
  return res;
}

}  // namespace specdist
