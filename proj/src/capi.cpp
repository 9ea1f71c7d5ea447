#include "specdist.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "specdist/berezin.hpp"
#include "specdist/engine.hpp"
#include "specdist/error.hpp"
#include "specdist/pythagoras.hpp"
#include "specdist/sampling.hpp"
#include "specdist/surface.hpp"
#include "specdist/transport.hpp"
#include "specdist/triple_io.hpp"
#include "specdist/verify.hpp"

using namespace specdist;

struct sd_triple {
  explicit sd_triple(const Triple& t) : solver(t) {}
  DistanceSolver solver;
  const Triple& triple() const { return solver.triple(); }
};

struct sd_state {
  State state;
};

struct sd_metric {
  MetricSpace metric;
};

struct sd_product {
  explicit sd_product(ProductTriple p) : lab(std::move(p)) {}
  ProductLab lab;
};

struct sd_berezin {
  BerezinMaps maps;
  RMatrix cost;
};

namespace {

thread_local std::string g_last_error;

sd_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SD_ERR_PARSE;
    case ErrorCode::Validation: return SD_ERR_VALIDATION;
    case ErrorCode::DimensionMismatch: return SD_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotHermitian: return SD_ERR_NOT_HERMITIAN;
    case ErrorCode::NoConvergence: return SD_ERR_NO_CONVERGENCE;
    case ErrorCode::Infeasible: return SD_ERR_INFEASIBLE;
    case ErrorCode::MissingGrading: return SD_ERR_MISSING_GRADING;
    case ErrorCode::AlreadyEven: return SD_ERR_ALREADY_EVEN;
    case ErrorCode::NonUnital: return SD_ERR_NON_UNITAL;
    case ErrorCode::RhoNotInAlgebra: return SD_ERR_RHO_NOT_IN_ALGEBRA;
    case ErrorCode::OutOfBall: return SD_ERR_OUT_OF_BALL;
    case ErrorCode::NotProbability: return SD_ERR_NOT_PROBABILITY;
    case ErrorCode::Internal: return SD_ERR_INTERNAL;
  }
  return SD_ERR_INTERNAL;
}

sd_status fail(sd_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, mapping exceptions onto status codes and the thread's last error.
template <class F>
sd_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SD_ERR_INTERNAL, e.what());
  }
}

#define SD_REQUIRE(cond, msg) \
  if (!(cond)) return fail(SD_ERR_INVALID_ARGUMENT, msg)

CMatrix read_complex(const double* data, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const double* z = data + 2 * (static_cast<size_t>(i) * cols + k);
      m(i, k) = cplx(z[0], z[1]);
    }
  return m;
}

Options options_of(const sd_options* o) {
  Options opts;
  if (!o) return opts;
  opts.tol = o->tol;
  opts.max_iter = o->max_iter;
  opts.seed = o->seed;
  opts.restarts = o->restarts;
  opts.method = o->method == SD_METHOD_SUPERGRADIENT ? Method::Supergradient : Method::Barrier;
  return opts;
}

void write_distance(const DistanceResult& r, sd_distance* out, double* optimizer) {
  out->value = r.value;
  out->gap = r.gap;
  out->iterations = r.iterations;
  out->infinite = r.infinite() ? 1 : 0;
  if (optimizer) {
    for (int k = 0; k < r.optimizer.size(); ++k) optimizer[k] = r.optimizer(k);
  }
}

sd_status run_checks(const std::vector<int>& criteria, const sd_options* opts, int quick, sd_check_callback cb,
                     void* user, int* n_failed) {
  VerifyConfig cfg;
  cfg.opts = options_of(opts);
  cfg.quick = quick != 0;
  int failed = 0;
  auto forward = [&](const CheckResult& r) {
    if (!r.passed) ++failed;
    if (!cb) return;
    const sd_check c{r.criterion, r.name.c_str(), r.passed ? 1 : 0, r.measured, r.threshold,
                     r.samples,   r.seconds,      r.detail.c_str()};
    cb(&c, user);
  };
  for (int k : criteria) run_criterion(k, cfg, forward);
  if (n_failed) *n_failed = failed;
  return SD_OK;
}

}  // namespace

extern "C" {

const char* sd_version(void) { return "0.1.0"; }

const char* sd_status_string(sd_status s) {
  switch (s) {
    case SD_OK: return "ok";
    case SD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SD_ERR_PARSE: return "parse error";
    case SD_ERR_VALIDATION: return "validation failed";
    case SD_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case SD_ERR_NOT_HERMITIAN: return "not Hermitian";
    case SD_ERR_NO_CONVERGENCE: return "no convergence";
    case SD_ERR_INFEASIBLE: return "infeasible";
    case SD_ERR_MISSING_GRADING: return "missing grading";
    case SD_ERR_ALREADY_EVEN: return "already even";
    case SD_ERR_NON_UNITAL: return "non-unital";
    case SD_ERR_RHO_NOT_IN_ALGEBRA: return "density difference not in the algebra";
    case SD_ERR_OUT_OF_BALL: return "outside the Bloch ball";
    case SD_ERR_NOT_PROBABILITY: return "not a probability vector";
    case SD_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sd_last_error(void) { return g_last_error.c_str(); }

void sd_options_default(sd_options* o) {
  if (!o) return;
  const Options d;
  o->tol = d.tol;
  o->max_iter = d.max_iter;
  o->seed = d.seed;
  o->restarts = d.restarts;
  o->method = SD_METHOD_BARRIER;
}

// --- triples ----------------------------------------------------------------

sd_status sd_triple_load(const char* path_or_json, sd_triple** out) {
  SD_REQUIRE(path_or_json && out, "sd_triple_load: null argument");
  return guarded([&] {
    *out = new sd_triple(load_triple(path_or_json));
    return SD_OK;
  });
}

sd_status sd_triple_two_point(double lambda, sd_triple** out) {
  SD_REQUIRE(out, "sd_triple_two_point: null argument");
  return guarded([&] {
    *out = new sd_triple(two_point_triple(lambda));
    return SD_OK;
  });
}

sd_status sd_triple_simplex3(sd_triple** out) {
  SD_REQUIRE(out, "sd_triple_simplex3: null argument");
  return guarded([&] {
    *out = new sd_triple(simplex_triple());
    return SD_OK;
  });
}

sd_status sd_triple_finite_metric(const sd_metric* m, sd_triple** out) {
  SD_REQUIRE(m && out, "sd_triple_finite_metric: null argument");
  return guarded([&] {
    *out = new sd_triple(finite_metric_triple(m->metric));
    return SD_OK;
  });
}

sd_status sd_triple_bloch(int variant, sd_triple** out) {
  SD_REQUIRE(out, "sd_triple_bloch: null argument");
  return guarded([&] {
    switch (variant) {
      case SD_BLOCH_CONJUGATION: *out = new sd_triple(bloch_conjugation_triple()); break;
      case SD_BLOCH_FLIP: *out = new sd_triple(bloch_flip_triple()); break;
      case SD_BLOCH_TRUNCATED_MOYAL: *out = new sd_triple(bloch_moyal_triple()); break;
      default: return fail(SD_ERR_INVALID_ARGUMENT, "sd_triple_bloch: unknown variant");
    }
    return SD_OK;
  });
}

sd_status sd_triple_create(const char* label, int dim, const double* dirac, const double* grading, int nbasis,
                           const double* basis, sd_triple** out) {
  SD_REQUIRE(dirac && basis && out && dim > 0 && nbasis > 0, "sd_triple_create: invalid argument");
  return guarded([&] {
    std::optional<SMatrix> g;
    if (grading) g = to_sparse(read_complex(grading, dim, dim));
    std::vector<SMatrix> b;
    const size_t stride = 2 * static_cast<size_t>(dim) * dim;
    for (int k = 0; k < nbasis; ++k) b.push_back(to_sparse(read_complex(basis + k * stride, dim, dim)));
    *out = new sd_triple(make_triple(label ? label : "triple", to_sparse(read_complex(dirac, dim, dim)),
                                     std::move(g), std::move(b)));
    return SD_OK;
  });
}

sd_status sd_triple_evenize(const sd_triple* t, sd_triple** out) {
  SD_REQUIRE(t && out, "sd_triple_evenize: null argument");
  return guarded([&] {
    *out = new sd_triple(evenize(t->triple()));
    return SD_OK;
  });
}

int sd_triple_dim(const sd_triple* t) { return t ? t->triple().dim : 0; }
int sd_triple_algebra_dim(const sd_triple* t) { return t ? t->triple().algebra_dim() : 0; }
int sd_triple_state_dim(const sd_triple* t) { return t ? t->triple().state_dim() : 0; }
int sd_triple_is_even(const sd_triple* t) { return t && t->triple().even() ? 1 : 0; }
const char* sd_triple_label(const sd_triple* t) { return t ? t->triple().label.c_str() : ""; }

sd_status sd_triple_to_json(const sd_triple* t, char* buf, size_t cap, size_t* needed) {
  SD_REQUIRE(t, "sd_triple_to_json: null triple");
  return guarded([&] {
    const std::string s = triple_to_json(t->triple());
    if (needed) *needed = s.size() + 1;
    if (!buf || cap < s.size() + 1) return fail(SD_ERR_BUFFER_TOO_SMALL, "sd_triple_to_json: buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return SD_OK;
  });
}

void sd_triple_free(sd_triple* t) { delete t; }

// --- metrics ----------------------------------------------------------------

sd_status sd_metric_create(int n, const double* g, sd_metric** out) {
  SD_REQUIRE(n > 0 && g && out, "sd_metric_create: invalid argument");
  return guarded([&] {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m(i, k) = g[static_cast<size_t>(i) * n + k];
    *out = new sd_metric{make_metric(m)};
    return SD_OK;
  });
}

sd_status sd_metric_load(const char* path_or_json, sd_metric** out) {
  SD_REQUIRE(path_or_json && out, "sd_metric_load: null argument");
  return guarded([&] {
    *out = new sd_metric{load_metric(path_or_json)};
    return SD_OK;
  });
}

int sd_metric_size(const sd_metric* m) { return m ? m->metric.size : 0; }

double sd_metric_entry(const sd_metric* m, int i, int j) {
  if (!m || i < 0 || j < 0 || i >= m->metric.size || j >= m->metric.size) return NAN;
  return m->metric.g(i, j);
}

void sd_metric_free(sd_metric* m) { delete m; }

// --- states -----------------------------------------------------------------

sd_status sd_state_load(const char* path_or_json, sd_state** out) {
  SD_REQUIRE(path_or_json && out, "sd_state_load: null argument");
  return guarded([&] {
    *out = new sd_state{load_state(path_or_json)};
    return SD_OK;
  });
}

sd_status sd_state_bloch(const double x[3], sd_state** out) {
  SD_REQUIRE(x && out, "sd_state_bloch: null argument");
  return guarded([&] {
    RVector v(3);
    v << x[0], x[1], x[2];
    *out = new sd_state{state_from_bloch(v)};
    return SD_OK;
  });
}

sd_status sd_state_simplex(int n, const double* p, sd_state** out) {
  SD_REQUIRE(n > 0 && p && out, "sd_state_simplex: invalid argument");
  return guarded([&] {
    *out = new sd_state{state_from_simplex(Eigen::Map<const RVector>(p, n))};
    return SD_OK;
  });
}

sd_status sd_state_density(int n, const double* rho, sd_state** out) {
  SD_REQUIRE(n > 0 && rho && out, "sd_state_density: invalid argument");
  return guarded([&] {
    const CMatrix m = read_complex(rho, n, n);
    validate_density(m);
    *out = new sd_state{State::density(m)};
    return SD_OK;
  });
}

sd_status sd_state_pure(int n, const double* v, sd_state** out) {
  SD_REQUIRE(n > 0 && v && out, "sd_state_pure: invalid argument");
  return guarded([&] {
    *out = new sd_state{state_pure(read_complex(v, n, 1).col(0))};
    return SD_OK;
  });
}

sd_status sd_state_values(int n, const double* values, sd_state** out) {
  SD_REQUIRE(n > 0 && values && out, "sd_state_values: invalid argument");
  return guarded([&] {
    *out = new sd_state{State::from_values(Eigen::Map<const RVector>(values, n))};
    return SD_OK;
  });
}

sd_status sd_state_random(const sd_triple* t, uint64_t seed, sd_state** out) {
  SD_REQUIRE(t && out, "sd_state_random: null argument");
  return guarded([&] {
    Rng rng(seed);
    *out = new sd_state{random_state(t->triple(), rng)};
    return SD_OK;
  });
}

void sd_state_free(sd_state* s) { delete s; }

// --- distances --------------------------------------------------------------

sd_status sd_distance_primal(const sd_triple* t, const sd_state* phi, const sd_state* psi, const sd_options* opts,
                             sd_distance* out, double* optimizer) {
  SD_REQUIRE(t && phi && psi && out, "sd_distance_primal: null argument");
  return guarded([&] {
    try {
      write_distance(t->solver.primal(phi->state, psi->state, options_of(opts)), out, optimizer);
    } catch (const NoConvergence& e) {
      *out = sd_distance{e.best_lower_bound(), NAN, e.iterations(), 0};
      throw;
    }
    return SD_OK;
  });
}

sd_status sd_distance_dual(const sd_triple* t, const sd_state* phi, const sd_state* psi, const sd_options* opts,
                           sd_distance* out, double* optimizer) {
  SD_REQUIRE(t && phi && psi && out, "sd_distance_dual: null argument");
  return guarded([&] {
    try {
      write_distance(t->solver.dual(phi->state, psi->state, options_of(opts)), out, optimizer);
    } catch (const NoConvergence& e) {
      *out = sd_distance{e.best_lower_bound(), NAN, e.iterations(), 0};
      throw;
    }
    return SD_OK;
  });
}

sd_status sd_lip_norm(const sd_triple* t, const double* coeffs, double* out) {
  SD_REQUIRE(t && coeffs && out, "sd_lip_norm: null argument");
  return guarded([&] {
    *out = t->solver.lip_norm(Eigen::Map<const RVector>(coeffs, t->triple().algebra_dim()));
    return SD_OK;
  });
}

// --- products ---------------------------------------------------------------

sd_status sd_product_create(const sd_triple* left, const sd_triple* right, sd_product** out) {
  SD_REQUIRE(left && right && out, "sd_product_create: null argument");
  return guarded([&] {
    *out = new sd_product(product_triple(left->triple(), right->triple()));
    return SD_OK;
  });
}

sd_status sd_product_combined(const sd_product* p, sd_triple** out) {
  SD_REQUIRE(p && out, "sd_product_combined: null argument");
  return guarded([&] {
    *out = new sd_triple(p->lab.product().combined);
    return SD_OK;
  });
}

sd_status sd_product_state(const sd_product* p, const sd_state* s1, const sd_state* s2, sd_state** out) {
  SD_REQUIRE(p && s1 && s2 && out, "sd_product_state: null argument");
  return guarded([&] {
    *out = new sd_state{product_state(p->lab.product(), s1->state, s2->state)};
    return SD_OK;
  });
}

sd_status sd_product_marginals(const sd_product* p, const sd_state* s, sd_state** s1, sd_state** s2) {
  SD_REQUIRE(p && s && s1 && s2, "sd_product_marginals: null argument");
  return guarded([&] {
    auto [a, b] = marginals(p->lab.product(), s->state);
    *s1 = new sd_state{std::move(a)};
    *s2 = new sd_state{std::move(b)};
    return SD_OK;
  });
}

sd_status sd_pythagoras_check(const sd_product* p, const sd_state* phi, const sd_state* psi, const sd_options* opts,
                              int product_states, sd_pythagoras_report* out) {
  SD_REQUIRE(p && phi && psi && out, "sd_pythagoras_check: null argument");
  return guarded([&] {
    const PythagorasReport r = p->lab.check(phi->state, psi->state, options_of(opts), product_states != 0);
    out->d1 = r.d1;
    out->d2 = r.d2;
    out->d_product = r.d_product;
    out->d_spectral = r.d_spectral;
    out->ratio = r.ratio;
    out->verdict = r.verdict == Verdict::Equality ? SD_VERDICT_EQUALITY
                   : r.verdict == Verdict::Strict ? SD_VERDICT_STRICT
                                                  : SD_VERDICT_VIOLATION;
    return SD_OK;
  });
}

sd_status sd_d_times(const sd_product* p, const sd_state* phi, const sd_state* psi, const sd_options* opts,
                     int direct, double* out) {
  SD_REQUIRE(p && phi && psi && out, "sd_d_times: null argument");
  return guarded([&] {
    *out = p->lab.d_times(phi->state, psi->state, options_of(opts), direct != 0).value;
    return SD_OK;
  });
}

double sd_product_metric(double d1, double d2) {
  if (!(d1 >= 0.0) || !(d2 >= 0.0)) return NAN;
  return product_metric(d1, d2);
}

void sd_product_free(sd_product* p) { delete p; }

// --- transport --------------------------------------------------------------

sd_status sd_transport(int n, const double* cost, const double* p, const double* q, double* plan, double* dual_a,
                       double* dual_b, double* value, double* gap) {
  SD_REQUIRE(n > 0 && cost && p && q, "sd_transport: invalid argument");
  return guarded([&] {
    RMatrix c(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) c(i, k) = cost[static_cast<size_t>(i) * n + k];
    const TransportPlan tp = kantorovich(c, Eigen::Map<const RVector>(p, n), Eigen::Map<const RVector>(q, n));
    if (plan)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) plan[static_cast<size_t>(i) * n + k] = tp.plan(i, k);
    if (dual_a)
      for (int i = 0; i < n; ++i) dual_a[i] = tp.dual_a(i);
    if (dual_b)
      for (int i = 0; i < n; ++i) dual_b[i] = tp.dual_b(i);
    if (value) *value = tp.value;
    if (gap) *gap = tp.gap;
    return SD_OK;
  });
}

sd_status sd_commutative_distance(const sd_metric* m, const double* p, const double* q, double* out) {
  SD_REQUIRE(m && p && q && out, "sd_commutative_distance: null argument");
  return guarded([&] {
    const int n = m->metric.size;
    *out = commutative_distance(m->metric, Eigen::Map<const RVector>(p, n), Eigen::Map<const RVector>(q, n));
    return SD_OK;
  });
}

// --- surface ----------------------------------------------------------------

void sd_surface_point(double t, double s, double xyz[3]) {
  const Vec3 f = embed(product_point(t, s));
  for (int k = 0; k < 3; ++k) xyz[k] = f[k];
}

sd_status sd_marginal_projection(const double phi[4], double f_phi[3], double f_flat[3], double* residual) {
  SD_REQUIRE(phi, "sd_marginal_projection: null argument");
  return guarded([&] {
    const MarginalProjection mp = marginal_projection({phi[0], phi[1], phi[2], phi[3]});
    for (int k = 0; k < 3; ++k) {
      if (f_phi) f_phi[k] = mp.f_phi[k];
      if (f_flat) f_flat[k] = mp.f_flat[k];
    }
    if (residual) *residual = mp.residual;
    return SD_OK;
  });
}

// --- berezin ----------------------------------------------------------------

sd_status sd_berezin_create(int nodes, sd_berezin** out) {
  SD_REQUIRE(out, "sd_berezin_create: null argument");
  return guarded([&] {
    auto b = std::make_unique<sd_berezin>();
    b->maps = berezin_maps(nodes);
    b->cost = geodesic_cost(b->maps);
    *out = b.release();
    return SD_OK;
  });
}

int sd_berezin_nodes(const sd_berezin* b) { return b ? static_cast<int>(b->maps.projections.size()) : 0; }

sd_status sd_berezin_node_positions(const sd_berezin* b, double* xyz) {
  SD_REQUIRE(b && xyz, "sd_berezin_node_positions: null argument");
  const RMatrix& n = b->maps.quad.nodes;
  for (int i = 0; i < n.rows(); ++i)
    for (int k = 0; k < 3; ++k) xyz[3 * i + k] = n(i, k);
  return SD_OK;
}

sd_status sd_berezin_symbol(const sd_berezin* b, const double* a, double* out) {
  SD_REQUIRE(b && a && out, "sd_berezin_symbol: null argument");
  return guarded([&] {
    const CVector s = symbol(b->maps, read_complex(a, 2, 2));
    for (int i = 0; i < s.size(); ++i) {
      out[2 * i] = s(i).real();
      out[2 * i + 1] = s(i).imag();
    }
    return SD_OK;
  });
}

sd_status sd_berezin_cost_distance(const sd_berezin* b, const double* rho, const double* tau, double* out) {
  SD_REQUIRE(b && rho && tau && out, "sd_berezin_cost_distance: null argument");
  return guarded([&] {
    *out = cost_distance(b->maps, b->cost, read_complex(rho, 2, 2), read_complex(tau, 2, 2));
    return SD_OK;
  });
}

void sd_berezin_free(sd_berezin* b) { delete b; }

// --- verification -----------------------------------------------------------

sd_status sd_verify(const char* suite, const sd_options* opts, int quick, sd_check_callback cb, void* user,
                    int* n_failed) {
  SD_REQUIRE(suite, "sd_verify: null suite");
  return guarded([&] { return run_checks(suite_criteria(suite), opts, quick, cb, user, n_failed); });
}

sd_status sd_verify_criterion(int criterion, const sd_options* opts, int quick, sd_check_callback cb, void* user,
                              int* n_failed) {
  SD_REQUIRE(criterion >= 1 && criterion <= kCriteriaCount, "sd_verify_criterion: criterion must be in 1..10");
  return guarded([&] { return run_checks({criterion}, opts, quick, cb, user, n_failed); });
}

const char* sd_criterion_title(int criterion) { return criterion_title(criterion); }

}  // extern "C"
