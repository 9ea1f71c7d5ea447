#include "specdist/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specdist/berezin.hpp"
#include "specdist/error.hpp"
#include "specdist/oracles.hpp"
#include "specdist/pythagoras.hpp"
#include "specdist/sampling.hpp"
#include "specdist/surface.hpp"
#include "specdist/transport.hpp"

namespace specdist {

namespace {

using Clock = std::chrono::steady_clock;

double rel_err(double value, double expected) {
  if (std::isinf(value) || std::isinf(expected)) return value == expected ? 0.0 : kInf;
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-6);
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

// Accumulates the worst error of one named check.
class Check {
 public:
  Check(int criterion, std::string name, double threshold) : start_(Clock::now()) {
    r_.criterion = criterion;
    r_.name = std::move(name);
    r_.threshold = threshold;
  }

  void record(double err, const std::string& context = {}) {
    ++r_.samples;
    if (std::isnan(err)) err = kInf;
    if (err >= r_.measured) {
      r_.measured = err;
      worst_ = context;
    }
  }

  void fail(const std::string& why) {
    failed_ = true;
    if (r_.detail.empty()) r_.detail = why;
  }

  void note(const std::string& s) { notes_ += notes_.empty() ? s : "; " + s; }

  CheckResult finish() {
    r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    r_.passed = !failed_ && r_.samples > 0 && r_.measured <= r_.threshold;
    std::string d = r_.detail;
    if (!r_.passed && !worst_.empty()) d += (d.empty() ? "" : "; ") + std::string("worst at ") + worst_;
    if (!notes_.empty()) d += (d.empty() ? "" : "; ") + notes_;
    r_.detail = d;
    return r_;
  }

 private:
  CheckResult r_;
  Clock::time_point start_;
  std::string worst_;
  std::string notes_;
  bool failed_ = false;
};

struct Runner {
  const VerifyConfig& cfg;
  const CheckCallback& cb;
  std::vector<CheckResult> out;

  int count(int full, int quick) const { return cfg.quick ? quick : full; }

  void add(Check& c) {
    out.push_back(c.finish());
    if (cb) cb(out.back());
  }

  // Runs `body` and converts solver exceptions into a failed check.
  template <class F>
  void guard(Check& c, F&& body) {
    try {
      body();
    } catch (const NoConvergence& e) {
      c.fail(std::string("no convergence: ") + e.what() + " (best lower bound " + fmt(e.best_lower_bound()) + ")");
    } catch (const Error& e) {
      c.fail(std::string(to_string(e.code())) + ": " + e.what());
    }
    add(c);
  }
};

RVector two_point_probability(double p) {
  RVector v(2);
  v << p, 1.0 - p;
  return v;
}

RVector delta(int n, int k) {
  RVector v = RVector::Zero(n);
  v(k) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------

void closed_forms(Runner& run, Rng& rng) {
  const Options& opts = run.cfg.opts;
  const int n = run.count(200, 25);
  const auto start = Clock::now();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {
    Check c(1, "two_point", 1e-4);
    run.guard(c, [&] {
      for (int i = 0; i < n; ++i) {
        const double lambda = 0.25 + 1.75 * unit(rng);
        const double p = unit(rng), q = unit(rng);
        const double d = spectral_distance(two_point_triple(lambda), state_from_simplex(two_point_probability(p)),
                                           state_from_simplex(two_point_probability(q)), opts)
                             .value;
        const double o = oracles::two_point_distance(lambda, lambda * (2 * p - 1), lambda * (2 * q - 1));
        c.record(rel_err(d, o), "lambda=" + fmt(lambda));
      }
    });
  }
  {
    Check c(1, "simplex3", 1e-4);
    run.guard(c, [&] {
      const DistanceSolver solver(simplex_triple());
      for (int i = 0; i < n; ++i) {
        const RVector p = random_probability(3, rng), q = random_probability(3, rng);
        const double d = solver.primal(state_from_simplex(p), state_from_simplex(q), opts).value;
        c.record(rel_err(d, oracles::simplex3_distance(p, q)));
      }
    });
  }
  {
    Check c(1, "finite_metric_pure", 1e-4);
    run.guard(c, [&] {
      const int per = 10;
      for (int m = 0; m * per < n; ++m) {
        const int size = 2 + m % 6;
        const MetricSpace x = random_metric(size, rng);
        const DistanceSolver solver(finite_metric_triple(x));
        std::uniform_int_distribution<int> pick(0, size - 1);
        for (int i = 0; i < per; ++i) {
          const int k = pick(rng);
          int l = pick(rng);
          if (l == k) l = (k + 1) % size;
          const double d = solver.primal(state_from_simplex(delta(size, k)), state_from_simplex(delta(size, l)), opts)
                               .value;
          c.record(rel_err(d, x.g(k, l)), "N=" + std::to_string(size));
        }
      }
    });
  }
  struct BlochCase {
    const char* name;
    Triple triple;
    double (*oracle)(const RVector&, const RVector&);
  };
  const BlochCase bloch[] = {
      {"bloch_conjugation", bloch_conjugation_triple(), oracles::bloch_conjugation_distance},
      {"bloch_flip", bloch_flip_triple(), oracles::bloch_flip_distance},
      {"bloch_truncated_moyal", bloch_moyal_triple(), oracles::bloch_truncated_moyal_distance},
  };
  for (const auto& bc : bloch) {
    Check c(1, bc.name, 1e-4);
    run.guard(c, [&] {
      const DistanceSolver solver(bc.triple);
      for (int i = 0; i < n; ++i) {
        const RVector x = random_bloch(rng, i % 4 == 0), y = random_bloch(rng, i % 4 == 1);
        const double d = solver.primal(state_from_bloch(x), state_from_bloch(y), opts).value;
        c.record(rel_err(d, bc.oracle(x, y)));
      }
    });
  }
  {
    Check c(1, "two_point_product", 1e-4);
    run.guard(c, [&] {
      const Triple t = two_point_triple(0.5);
      const ProductTriple p = product_triple(t, t);
      const DistanceSolver solver(p.combined);
      for (int i = 0; i < n; ++i) {
        const double a1 = unit(rng), a2 = unit(rng), b1 = unit(rng), b2 = unit(rng);
        const State phi = product_state(p, state_from_simplex(two_point_probability(a1)),
                                        state_from_simplex(two_point_probability(a2)));
        const State psi = product_state(p, state_from_simplex(two_point_probability(b1)),
                                        state_from_simplex(two_point_probability(b2)));
        const double o = product_metric(oracles::two_point_distance(0.5, a1 - 0.5, b1 - 0.5),
                                        oracles::two_point_distance(0.5, a2 - 0.5, b2 - 0.5));
        c.record(rel_err(solver.primal(phi, psi, opts).value, o));
      }
    });
  }
  Check c(1, "runtime_seconds", 300.0);
  c.record(std::chrono::duration<double>(Clock::now() - start).count());
  run.add(c);
}

void transport_agreement(Runner& run, Rng& rng) {
  const int metrics = run.count(50, 8);
  Check value(2, "lp_vs_engine", 1e-4), gap(2, "duality_gap", 1e-9), marg(2, "plan_marginals", 1e-10);
  try {
    for (int m = 0; m < metrics; ++m) {
      const int size = 2 + m % 11;
      const MetricSpace x = random_metric(size, rng);
      const DistanceSolver solver(finite_metric_triple(x));
      for (int i = 0; i < 2; ++i) {
        const RVector p = random_probability(size, rng), q = random_probability(size, rng);
        const TransportPlan plan = kantorovich(x.g, p, q);
        const double d = solver.primal(state_from_simplex(p), state_from_simplex(q), run.cfg.opts).value;
        const std::string where = "N=" + std::to_string(size);
        value.record(rel_err(d, plan.value), where);
        gap.record(std::abs(plan.gap), where);
        const double rows = (plan.flow.rowwise().sum() - p).cwiseAbs().maxCoeff();
        const double cols = (plan.flow.colwise().sum().transpose() - q).cwiseAbs().maxCoeff();
        marg.record(std::max(rows, cols), where);
      }
    }
  } catch (const Error& e) {
    value.fail(std::string(to_string(e.code())) + ": " + e.what());
  }
  run.add(value);
  run.add(gap);
  run.add(marg);
}

void sandwich(Runner& run, Rng& rng) {
  const int triples = run.count(100, 12);
  const int pairs = run.count(10, 4);
  Check c(3, "ratio_in_bounds", 1e-4);
  double lo = kInf, hi = 0.0;
  run.guard(c, [&] {
    for (int t = 0; t < triples; ++t) {
      const Triple t1 = random_even_triple(rng), t2 = random_triple(rng);
      const ProductLab lab(product_triple(t1, t2));
      for (int i = 0; i < pairs; ++i) {
        const State phi = product_state(lab.product(), random_state(t1, rng), random_state(t2, rng));
        const State psi = product_state(lab.product(), random_state(t1, rng), random_state(t2, rng));
        const PythagorasReport rep = lab.check(phi, psi, run.cfg.opts);
        if (!(rep.d_product > 1e-9) || std::isinf(rep.d_product)) continue;
        lo = std::min(lo, rep.ratio);
        hi = std::max(hi, rep.ratio);
        const double excursion = std::max({0.0, 1.0 - rep.ratio, rep.ratio - std::numbers::sqrt2});
        c.record(excursion, t1.label + " x " + t2.label + ": d1=" + fmt(rep.d1) + " d2=" + fmt(rep.d2) +
                                " d=" + fmt(rep.d_spectral) + " ratio=" + fmt(rep.ratio));
      }
    }
    c.note("observed ratio range [" + fmt(lo) + ", " + fmt(hi) + "]");
  });
}

void equalities(Runner& run, Rng& rng) {
  {
    Check c(4, "two_point_grid", 1e-4);
    run.guard(c, [&] {
      const Triple t = two_point_triple(0.5);
      const ProductLab lab(product_triple(t, t));
      auto grid = [](int i) { return (1.0 + (-1.0 + 2.0 * i / 8.0)) / 2.0; };
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
          const State phi = product_state(lab.product(), state_from_simplex(two_point_probability(grid(i))),
                                          state_from_simplex(two_point_probability(grid(j))));
          const State psi = product_state(lab.product(), state_from_simplex(two_point_probability(grid(8 - i))),
                                          state_from_simplex(two_point_probability(grid((j + 3) % 9))));
          const PythagorasReport rep = lab.check(phi, psi, run.cfg.opts);
          c.record(std::abs(rep.ratio - 1.0), "grid (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    });
  }
  {
    Check c(4, "finite_x_finite_pure", 1e-4);
    run.guard(c, [&] {
      const std::vector<std::pair<int, int>> sizes =
          run.cfg.quick ? std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}
                        : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 5}, {5, 5}};
      for (const auto& [n1, n2] : sizes) {
        const MetricSpace x1 = random_metric(n1, rng), x2 = random_metric(n2, rng);
        const ProductLab lab(product_triple(finite_metric_triple(x1), finite_metric_triple(x2)));
        std::vector<State> points;
        for (int k = 0; k < n1; ++k)
          for (int l = 0; l < n2; ++l)
            points.push_back(
                product_state(lab.product(), state_from_simplex(delta(n1, k)), state_from_simplex(delta(n2, l))));
        for (size_t a = 0; a < points.size(); ++a)
          for (size_t b = a + 1; b < points.size(); ++b) {
            const PythagorasReport rep = lab.check(points[a], points[b], run.cfg.opts);
            c.record(std::abs(rep.ratio - 1.0), std::to_string(n1) + "x" + std::to_string(n2));
          }
      }
    });
  }
}

Triple amplified_m2(const CMatrix& d) {
  return make_triple("m2_amplified", to_sparse(d), std::nullopt, amplify(pauli_basis(), 2), pauli_basis());
}

void duality(Runner& run, Rng& rng) {
  {
    Check c(5, "primal_vs_dual", 1e-4);
    run.guard(c, [&] {
      const int ops = run.count(10, 3), pairs = run.count(10, 4);
      const CMatrix half = CMatrix::Identity(2, 2) * 0.5;
      for (int o = 0; o < ops; ++o) {
        const DistanceSolver solver(amplified_m2(random_hermitian(4, rng)));
        for (int i = 0; i < pairs; ++i) {
          const State phi = State::density(kron(bloch_density(random_bloch(rng)), half));
          const State psi = State::density(kron(bloch_density(random_bloch(rng)), half));
          const double p = solver.primal(phi, psi, run.cfg.opts).value;
          const double d = solver.dual(phi, psi, run.cfg.opts).value;
          c.record(rel_err(d, p), "primal=" + fmt(p) + " dual=" + fmt(d));
        }
      }
    });
  }
  Check c(5, "infinite_detection_mismatches", 0.0);
  run.guard(c, [&] {
    const int n = run.count(40, 10);
    int mismatches = 0;
    auto expect = [&](const DistanceSolver& s, const State& phi, const State& psi, bool infinite,
                      const std::string& what) {
      const bool got = s.primal(phi, psi, run.cfg.opts).infinite();
      if (got != infinite) {
        ++mismatches;
        c.fail(what + (infinite ? ": expected +inf" : ": expected a finite value"));
      }
    };
    const DistanceSolver zero3(diagonal_triple(CMatrix::Zero(3, 3), "zero_dirac"));
    CMatrix blocks = CMatrix::Zero(4, 4);
    const DistanceSolver zero_m2(amplified_m2(CMatrix::Zero(4, 4)));
    for (int i = 0; i < n; ++i) {
      const RVector p = random_probability(3, rng), q = random_probability(3, rng);
      expect(zero3, state_from_simplex(p), state_from_simplex(q), true, "D=0 on C^3, distinct states");
      expect(zero3, state_from_simplex(p), state_from_simplex(p), false, "D=0 on C^3, equal states");

      std::uniform_real_distribution<double> w(0.5, 2.0);
      blocks(0, 1) = blocks(1, 0) = w(rng);
      blocks(2, 3) = blocks(3, 2) = w(rng);
      const DistanceSolver split(diagonal_triple(blocks, "two_components"));
      const RVector a = random_probability(4, rng);
      RVector b = random_probability(4, rng);
      if (i % 2 == 0) {
        // Same mass on each component: no separating direction.
        const double m = a(0) + a(1), f = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        b << m * f, m * (1 - f), (1 - m) * f, (1 - m) * (1 - f);
      }
      const bool separated = std::abs((a(0) + a(1)) - (b(0) + b(1))) > 1e-9;
      expect(split, state_from_simplex(a), state_from_simplex(b), separated, "two components");

      const RVector x = random_bloch(rng), y = random_bloch(rng);
      expect(zero_m2, state_from_bloch(x), state_from_bloch(y), true, "D=0 on M_2, distinct states");
    }
    c.record(mismatches);
  });
}

void lipschitz_identities(Runner& run, Rng& rng) {
  {
    Check c(6, "product_lipschitz_identity", 1e-9);
    run.guard(c, [&] {
      const int n = run.count(500, 60);
      std::normal_distribution<double> normal;
      for (int i = 0; i < n; i += 10) {
        const Triple t1 = random_even_triple(rng), t2 = random_triple(rng);
        const ProductTriple p = product_triple(t1, t2);
        const CMatrix d1(t1.dirac), d2(t2.dirac), d(p.combined.dirac);
        const CMatrix id1 = CMatrix::Identity(t1.dim, t1.dim), id2 = CMatrix::Identity(t2.dim, t2.dim);
        for (int k = 0; k < 10; ++k) {
          RVector c1(t1.algebra_dim()), c2(t2.algebra_dim());
          for (int j = 0; j < c1.size(); ++j) c1(j) = normal(rng);
          for (int j = 0; j < c2.size(); ++j) c2(j) = normal(rng);
          const CMatrix a1(element(t1, c1)), a2(element(t2, c2));
          const double l1 = operator_norm(commutator(d1, a1)), l2 = operator_norm(commutator(d2, a2));
          const double lhs = l1 * l1 + l2 * l2;
          const double l = operator_norm(commutator(d, kron(a1, id2) + kron(id1, a2)));
          c.record(std::abs(lhs - l * l) / std::max(1.0, l * l), t1.label + " x " + t2.label);
        }
      }
    });
  }
  Check c(6, "two_point_product_lipnorm", 1e-10);
  run.guard(c, [&] {
    const int n = run.count(500, 60);
    const CMatrix f = pauli::sigma1(), g = pauli::sigma3(), id = pauli::identity();
    const CMatrix d = kron(f, id) + kron(g, f);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const double x1 = 3 * u(rng), x2 = 3 * u(rng), x3 = 3 * u(rng), phi1 = u(rng), psi2 = u(rng);
      const CMatrix a = x1 / 2 * kron(g, id) + x2 / 2 * kron(id, g) + x3 / 2 * kron(phi1 * id + g, psi2 * id + g);
      const double e = operator_norm(commutator(d, a));
      const double o = oracles::two_two_point_lipnorm(x1, x2, x3, phi1, psi2);
      c.record(std::abs(e - o) / std::max(1.0, o));
    }
  });
}

CMatrix random_grading(int n, Rng& rng) {
  CMatrix g = CMatrix::Identity(n, n);
  const int flip = std::uniform_int_distribution<int>(1, n - 1)(rng);
  for (int k = flip; k < n; ++k) g(k, k) = -1.0;
  return g;
}

void k_bounds(Runner& run, Rng& rng) {
  {
    Check c(7, "k_outside_1_3", 1e-9);
    run.guard(c, [&] {
      const int n = run.count(200, 20);
      double lo = kInf;
      for (int i = 0; i < n; ++i) {
        const int n1 = 2 + i % 2, n2 = 2 + (i / 2) % 2;
        const CMatrix r1 = random_density(n1, rng, 1 + i % n1), r2 = random_density(n2, rng, 1 + i % n2);
        const KEstimate k =
            idempotent_norm_K(r1, r2, random_grading(n1, rng), random_grading(n2, rng), 20, rng());
        lo = std::min(lo, k.k);
        c.record(std::max({0.0, 1.0 - k.k, k.k - 3.0}), "K=" + fmt(k.k));
      }
      c.note("smallest sampled K " + fmt(lo));
    });
  }
  Check c(7, "k_witness_equals_3", 1e-12);
  run.guard(c, [&] {
    CMatrix up = CMatrix::Zero(2, 2);
    up(0, 0) = 1.0;
    const KEstimate k = idempotent_norm_K(up, up, pauli::sigma3(), pauli::sigma3(), 50, rng());
    c.record(std::abs(k.witness - 3.0));
    c.record(std::abs(k.k - 3.0));
  });
}

CVector bloch_vector_state(const RVector& x) {
  const HermitianEig e = hermitian_eig(bloch_density(x));
  return e.eigenvectors.col(1);
}

void peres_purification(Runner& run, Rng& rng) {
  {
    Check c(8, "bell_partial_transpose", 1e-12);
    run.guard(c, [&] {
      CVector bell = CVector::Zero(4);
      bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
      const CMatrix rho = bell * bell.adjoint();
      const double lmin = hermitian_eigenvalues(peres_partial_transpose(rho, 2, 2))(0);
      c.record(std::abs(lmin + 0.5));
    });
  }
  Check c(8, "purified_pure_qubits", 1e-12);
  run.guard(c, [&] {
    const int n = run.count(100, 20);
    for (int i = 0; i < n; ++i) {
      const RVector x = random_bloch(rng, true), y = random_bloch(rng, true);
      const double half = 0.5 * (x - y).norm();
      c.record(std::abs(oracles::purified_distance_pure(bloch_vector_state(x), bloch_vector_state(y)) - half));
      c.record(std::abs(oracles::purified_distance_qubit(x, y) - half));
    }
  });
}

void berezin(Runner& run, Rng& rng) {
  const auto start = Clock::now();
  const BerezinMaps maps = berezin_maps(run.cfg.berezin_nodes);
  {
    Check c(9, "quantize_one_residual", 5e-3);
    run.guard(c, [&] {
      const CVector one = CVector::Ones(maps.projections.size());
      c.record(operator_norm(quantize(maps, one) - CMatrix::Identity(2, 2)));
    });
  }
  {
    Check c(9, "adjointness_residual", 1e-10);
    run.guard(c, [&] {
      std::normal_distribution<double> normal;
      for (int i = 0; i < run.count(50, 10); ++i) {
        CMatrix a(2, 2);
        for (int k = 0; k < 4; ++k) a(k / 2, k % 2) = cplx(normal(rng), normal(rng));
        CVector f(maps.projections.size());
        for (int k = 0; k < f.size(); ++k) f(k) = cplx(normal(rng), normal(rng));
        c.record(adjointness_residual(maps, a, f));
      }
    });
  }
  Check prop(9, "w_ratio_spread", 0.03), bound(9, "w_over_bound", 1.0);
  try {
    const RMatrix cost = geodesic_cost(maps);
    const double ell = mean_geodesic(maps);
    std::vector<double> ratios;
    for (int i = 0; i < run.count(20, 6); ++i) {
      const RVector x = random_bloch(rng), y = random_bloch(rng);
      const CMatrix rx = bloch_density(x), ry = bloch_density(y);
      const double w = cost_distance(maps, cost, rx, ry);
      ratios.push_back(w / (x - y).norm());
      bound.record(w / (std::pow(2.0, 1.5) * ell * hs_norm(rx - ry)));
    }
    double mean = 0.0;
    for (double r : ratios) mean += r / ratios.size();
    for (double r : ratios) prop.record(std::abs(r - mean) / mean);
    prop.note("constant " + fmt(mean));
  } catch (const Error& e) {
    prop.fail(std::string(to_string(e.code())) + ": " + e.what());
  }
  run.add(prop);
  run.add(bound);
  Check c(9, "runtime_seconds", 600.0);
  c.record(std::chrono::duration<double>(Clock::now() - start).count());
  run.add(c);
}

void surface_checks(Runner& run, Rng& rng) {
  {
    Check c(10, "surface_parametrization", 4 * std::numeric_limits<double>::epsilon());
    run.guard(c, [&] {
      for (const SurfacePoint& p : sample_surface(41)) {
        c.record(std::max({std::abs(p.xyz[0] - p.t), std::abs(p.xyz[1] - p.s), std::abs(p.xyz[2] - p.t * p.s)}));
      }
      const Vec3 vertices[] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      for (int k = 0; k < 4; ++k) {
        Vec4 e{0, 0, 0, 0};
        e[k] = 1.0;
        const Vec3 f = embed(e);
        for (int j = 0; j < 3; ++j) c.record(std::abs(f[j] - vertices[k][j]));
      }
    });
  }
  Check c(10, "marginal_projection_residual", 1e-10);
  run.guard(c, [&] {
    for (int i = 0; i < run.count(100, 20); ++i) {
      const RVector p = random_probability(4, rng);
      c.record(marginal_projection({p(0), p(1), p(2), p(3)}).residual);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const Vec4 prod = product_point(u(rng), u(rng));
      const Vec4 flat = marginal_product(prod);
      for (int k = 0; k < 4; ++k) c.record(std::abs(flat[k] - prod[k]));
    }
  });
}

}  // namespace

const char* criterion_title(int criterion) {
  switch (criterion) {
    case 1: return "closed-form oracles";
    case 2: return "transport agreement";
    case 3: return "product sandwich bounds";
    case 4: return "Pythagoras equalities";
    case 5: return "primal-dual agreement and infinite distances";
    case 6: return "Lipschitz norm identities";
    case 7: return "idempotent norm bounds";
    case 8: return "partial transpose and purified distance";
    case 9: return "Berezin maps and cost distance";
    case 10: return "simplex surface and marginal projection";
  }
  return "unknown";
}

std::vector<CheckResult> run_criterion(int criterion, const VerifyConfig& cfg, const CheckCallback& cb) {
  Runner run{cfg, cb, {}};
  Rng rng(cfg.opts.seed + 7919ULL * static_cast<std::uint64_t>(criterion));
  switch (criterion) {
    case 1: closed_forms(run, rng); break;
    case 2: transport_agreement(run, rng); break;
    case 3: sandwich(run, rng); break;
    case 4: equalities(run, rng); break;
    case 5: duality(run, rng); break;
    case 6: lipschitz_identities(run, rng); break;
    case 7: k_bounds(run, rng); break;
    case 8: peres_purification(run, rng); break;
    case 9: berezin(run, rng); break;
    case 10: surface_checks(run, rng); break;
    default: throw Error(ErrorCode::InvalidArgument, "run_criterion: criterion must be in 1..10");
  }
  return run.out;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "oracles") return {1, 6, 8};
  if (suite == "transport") return {2, 10};
  if (suite == "pythagoras") return {3, 4, 5, 7};
  if (suite == "berezin") return {9};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw Error(ErrorCode::InvalidArgument,
              "unknown suite \"" + suite + "\" (expected oracles, transport, pythagoras, berezin or all)");
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg, const CheckCallback& cb) {
  std::vector<CheckResult> out;
  for (int k : suite_criteria(suite)) {
    auto part = run_criterion(k, cfg, cb);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace specdist
