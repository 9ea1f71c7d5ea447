/* Spectral distances on finite spectral triples: C interface.
 *
 * Objects are opaque handles created by sd_*_create / sd_*_load style calls
 * and released with the matching sd_*_free. Every fallible call returns an
 * sd_status; on failure sd_last_error() holds a message for the calling
 * thread. Complex matrices are passed as row-major arrays of interleaved
 * (re, im) doubles. Handles are immutable after creation and may be shared
 * between threads.
 */
#ifndef SPECDIST_H
#define SPECDIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPECDIST_BUILDING)
#define SD_API __attribute__((visibility("default")))
#else
#define SD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sd_status {
  SD_OK = 0,
  SD_ERR_INVALID_ARGUMENT = 1,
  SD_ERR_PARSE = 2,
  SD_ERR_VALIDATION = 3,
  SD_ERR_DIMENSION_MISMATCH = 4,
  SD_ERR_NOT_HERMITIAN = 5,
  SD_ERR_NO_CONVERGENCE = 6,
  SD_ERR_INFEASIBLE = 7,
  SD_ERR_MISSING_GRADING = 8,
  SD_ERR_ALREADY_EVEN = 9,
  SD_ERR_NON_UNITAL = 10,
  SD_ERR_RHO_NOT_IN_ALGEBRA = 11,
  SD_ERR_OUT_OF_BALL = 12,
  SD_ERR_NOT_PROBABILITY = 13,
  SD_ERR_BUFFER_TOO_SMALL = 14,
  SD_ERR_INTERNAL = 15
} sd_status;

typedef struct sd_triple sd_triple;
typedef struct sd_state sd_state;
typedef struct sd_metric sd_metric;
typedef struct sd_product sd_product;
typedef struct sd_berezin sd_berezin;

enum { SD_METHOD_BARRIER = 0, SD_METHOD_SUPERGRADIENT = 1 };
enum { SD_BLOCH_CONJUGATION = 0, SD_BLOCH_FLIP = 1, SD_BLOCH_TRUNCATED_MOYAL = 2 };
enum { SD_VERDICT_EQUALITY = 0, SD_VERDICT_STRICT = 1, SD_VERDICT_VIOLATION = 2 };

typedef struct sd_options {
  double tol;      /* relative, > 0 */
  int max_iter;
  uint64_t seed;
  int restarts;
  int method;      /* SD_METHOD_* */
} sd_options;

typedef struct sd_distance {
  double value;    /* +INFINITY when the states are separated */
  double gap;
  int iterations;
  int infinite;
} sd_distance;

typedef struct sd_pythagoras_report {
  double d1, d2;
  double d_product;
  double d_spectral;
  double ratio;
  int verdict;     /* SD_VERDICT_* */
} sd_pythagoras_report;

typedef struct sd_check {
  int criterion;
  const char* name;
  int passed;
  double measured;
  double threshold;
  int samples;
  double seconds;
  const char* detail;
} sd_check;

typedef void (*sd_check_callback)(const sd_check* check, void* user);

SD_API const char* sd_version(void);
SD_API const char* sd_status_string(sd_status status);
SD_API const char* sd_last_error(void);
SD_API void sd_options_default(sd_options* opts);

/* Triples. */
SD_API sd_status sd_triple_load(const char* path_or_json, sd_triple** out);
SD_API sd_status sd_triple_two_point(double lambda, sd_triple** out);
SD_API sd_status sd_triple_simplex3(sd_triple** out);
SD_API sd_status sd_triple_finite_metric(const sd_metric* metric, sd_triple** out);
SD_API sd_status sd_triple_bloch(int variant, sd_triple** out);
/* grading may be NULL; basis holds nbasis consecutive dim x dim matrices. */
SD_API sd_status sd_triple_create(const char* label, int dim, const double* dirac, const double* grading, int nbasis,
                                  const double* basis, sd_triple** out);
SD_API sd_status sd_triple_evenize(const sd_triple* t, sd_triple** out);
SD_API int sd_triple_dim(const sd_triple* t);
SD_API int sd_triple_algebra_dim(const sd_triple* t);
SD_API int sd_triple_state_dim(const sd_triple* t);
SD_API int sd_triple_is_even(const sd_triple* t);
SD_API const char* sd_triple_label(const sd_triple* t);
/* Writes NUL-terminated JSON when cap suffices; *needed gets the full size. */
SD_API sd_status sd_triple_to_json(const sd_triple* t, char* buf, size_t cap, size_t* needed);
SD_API void sd_triple_free(sd_triple* t);

/* Metric spaces. g is n x n row-major; INFINITY marks disconnected pairs. */
SD_API sd_status sd_metric_create(int n, const double* g, sd_metric** out);
SD_API sd_status sd_metric_load(const char* path_or_json, sd_metric** out);
SD_API int sd_metric_size(const sd_metric* m);
SD_API double sd_metric_entry(const sd_metric* m, int i, int j);
SD_API void sd_metric_free(sd_metric* m);

/* States. */
SD_API sd_status sd_state_load(const char* path_or_json, sd_state** out);
SD_API sd_status sd_state_bloch(const double x[3], sd_state** out);
SD_API sd_status sd_state_simplex(int n, const double* p, sd_state** out);
SD_API sd_status sd_state_density(int n, const double* rho, sd_state** out);
SD_API sd_status sd_state_pure(int n, const double* v, sd_state** out);
SD_API sd_status sd_state_values(int n, const double* values, sd_state** out);
SD_API sd_status sd_state_random(const sd_triple* t, uint64_t seed, sd_state** out);
SD_API void sd_state_free(sd_state* s);

/* Spectral distance. opts may be NULL for defaults; optimizer may be NULL,
 * else it receives algebra_dim coefficients. On SD_ERR_NO_CONVERGENCE,
 * out->value holds the best certified lower bound. */
SD_API sd_status sd_distance_primal(const sd_triple* t, const sd_state* phi, const sd_state* psi,
                                    const sd_options* opts, sd_distance* out, double* optimizer);
SD_API sd_status sd_distance_dual(const sd_triple* t, const sd_state* phi, const sd_state* psi,
                                  const sd_options* opts, sd_distance* out, double* optimizer);
/* ||[D, a]|| for a = sum_k c_k B_k. */
SD_API sd_status sd_lip_norm(const sd_triple* t, const double* coeffs, double* out);

/* Products. The left factor must be even. */
SD_API sd_status sd_product_create(const sd_triple* left, const sd_triple* right, sd_product** out);
SD_API sd_status sd_product_combined(const sd_product* p, sd_triple** out);
SD_API sd_status sd_product_state(const sd_product* p, const sd_state* s1, const sd_state* s2, sd_state** out);
SD_API sd_status sd_product_marginals(const sd_product* p, const sd_state* s, sd_state** s1, sd_state** s2);
SD_API sd_status sd_pythagoras_check(const sd_product* p, const sd_state* phi, const sd_state* psi,
                                     const sd_options* opts, int product_states, sd_pythagoras_report* out);
SD_API sd_status sd_d_times(const sd_product* p, const sd_state* phi, const sd_state* psi, const sd_options* opts,
                            int direct, double* out);
SD_API double sd_product_metric(double d1, double d2);
SD_API void sd_product_free(sd_product* p);

/* Optimal transport on n points. plan (n x n), dual_a, dual_b may be NULL. */
SD_API sd_status sd_transport(int n, const double* cost, const double* p, const double* q, double* plan,
                              double* dual_a, double* dual_b, double* value, double* gap);
SD_API sd_status sd_commutative_distance(const sd_metric* m, const double* p, const double* q, double* out);

/* Tetrahedron embedding of classical two-qubit states. */
SD_API void sd_surface_point(double t, double s, double xyz[3]);
SD_API sd_status sd_marginal_projection(const double phi[4], double f_phi[3], double f_flat[3], double* residual);

/* Berezin maps on a Fibonacci sphere of `nodes` points. */
SD_API sd_status sd_berezin_create(int nodes, sd_berezin** out);
SD_API int sd_berezin_nodes(const sd_berezin* b);
/* node_xyz receives 3 doubles per node. */
SD_API sd_status sd_berezin_node_positions(const sd_berezin* b, double* node_xyz);
/* a is 2 x 2; out receives one interleaved complex value per node. */
SD_API sd_status sd_berezin_symbol(const sd_berezin* b, const double* a, double* out);
SD_API sd_status sd_berezin_cost_distance(const sd_berezin* b, const double* rho, const double* tau, double* out);
SD_API void sd_berezin_free(sd_berezin* b);

/* Acceptance checks. suite is oracles, transport, pythagoras, berezin or all.
 * *n_failed receives the number of failed checks. */
SD_API sd_status sd_verify(const char* suite, const sd_options* opts, int quick, sd_check_callback cb, void* user,
                           int* n_failed);
SD_API sd_status sd_verify_criterion(int criterion, const sd_options* opts, int quick, sd_check_callback cb,
                                     void* user, int* n_failed);
SD_API const char* sd_criterion_title(int criterion);

#ifdef __cplusplus
}
#endif

#endif /* SPECDIST_H */
